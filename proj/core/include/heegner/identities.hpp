#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "heegner/hypergeom.hpp"
#include "heegner/kernel.hpp"
#include "heegner/modular.hpp"

namespace heegner {

// base^exponent, principal.
struct Surd {
  mpq_class base;
  mpq_class exponent;
};

// p + q sqrt(r)
struct LinearSurd {
  mpq_class p, q;
  long r = 1;
};

struct GammaFactor {
  mpq_class arg;
  mpq_class exponent;
};

// rational * prod surds * prod linear * pi^pi_exponent * prod Gamma(arg)^exp * e^{i pi phase}
struct ClosedFormConstant {
  mpq_class rational = 1;
  std::vector<Surd> surds;
  std::vector<LinearSurd> linear;
  mpq_class pi_exponent = 0;
  std::vector<GammaFactor> gammas;
  mpq_class phase = 0;

  std::string to_string() const;
};

Complex eval_closed_form(const ClosedFormConstant& cf, const PrecisionContext& ctx);

enum class RecordKind { series_infty, hyp_one, hyp_zero, table_value, eta_special, chowla_selberg };

std::string to_string(RecordKind k);

// sum (A + n) (6n)!/((3n)! n!^3) (sign/C)^n
struct SeriesData {
  mpq_class A, C;
  int sign = 1;
  std::optional<mpq_class> C_corrected;
};

// c1 F(z0)^2 + c2 F(z1) F+(z2), F the region's 2F1 and F+ its (a+1, b+1; c+1) shift.
struct HypData {
  mpq_class c1, c2;
  std::array<mpq_class, 3> z;
  std::optional<std::array<mpq_class, 3>> z_corrected;
  HypParams params;
};

enum class TableQuantity { J, s2 };

struct TableData {
  TableQuantity quantity;
  mpq_class value;
  std::optional<mpq_class> j_value;
};

// eta(tau)^power = lhs
struct EtaData {
  int power = 1;
};

struct ChowlaSelbergData {
  long p = 3;
};

struct IdentityRecord {
  std::string id;
  RecordKind kind;
  std::optional<HeegnerPoint> heegner;
  ClosedFormConstant lhs;
  std::optional<SeriesData> series;
  std::optional<HypData> hyp;
  std::optional<TableData> table;
  std::optional<EtaData> eta;
  std::optional<ChowlaSelbergData> cs;
  std::string annotation;  // suspected typo, if any
};

struct VerificationReport {
  std::string id;
  RecordKind kind = RecordKind::table_value;
  std::optional<HeegnerPoint> heegner;
  long digits = 0;
  Complex lhs, rhs;
  Real abs_diff, rel_diff;
  bool pass = false;
  std::vector<std::string> notes;
};

// rel_diff <= 10^{-(digits - 10)}
bool passes(const Real& rel_diff, long digits);

const std::vector<IdentityRecord>& catalog();
const IdentityRecord* find_record(const std::string& id);
std::vector<std::string> catalog_ids();

enum class ThmOneForm { proof, printed };

// Report ids are "thm.infty.<point>" etc.
VerificationReport verify_thm_infty(const HeegnerPoint& h, const PrecisionContext& ctx);
VerificationReport verify_thm_one(const HeegnerPoint& h, const PrecisionContext& ctx,
                                  ThmOneForm form = ThmOneForm::proof);
VerificationReport verify_thm_zero(const HeegnerPoint& h, const PrecisionContext& ctx);

struct RecordOptions {
  bool use_printed = false;  // evaluate typo-annotated records as printed
};

VerificationReport verify_series_identity(const IdentityRecord& rec, const PrecisionContext& ctx,
                                          RecordOptions opt = {});
VerificationReport verify_hyp_record(const IdentityRecord& rec, const PrecisionContext& ctx, RecordOptions opt = {});
VerificationReport verify_table_record(const IdentityRecord& rec, const PrecisionContext& ctx);
VerificationReport verify_eta_record(const IdentityRecord& rec, const PrecisionContext& ctx);
VerificationReport chowla_selberg(long p, const PrecisionContext& ctx);

VerificationReport verify_record(const IdentityRecord& rec, const PrecisionContext& ctx, RecordOptions opt = {});
std::vector<VerificationReport> verify_table_values(const PrecisionContext& ctx);

// The hypergeometric regime used for F at the record's first argument.
HypRegime hyp_record_regime(const IdentityRecord& rec, const PrecisionContext& ctx);

// One JSON object: {id, kind, tau{a,b,c,d}, digits, lhs, rhs, abs_diff, rel_diff, pass, notes}.
std::string to_json(const VerificationReport& r, int indent = -1);
std::string record_to_json(const IdentityRecord& r, int indent = -1);

}  // namespace heegner
