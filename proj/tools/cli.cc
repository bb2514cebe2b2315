// Copyright 2026 The tatetower Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <string>

#include "tatetower/cyclotomic.h"
#include "tatetower/error.h"
#include "tatetower/maclane.h"
#include "tatetower/series_json.h"
#include "tatetower/uniformizers.h"

namespace tatetower::cli {
namespace {

struct RunConfig {
  std::int64_t p = 3;
  int m = 3;
  int n = 1;
  std::string beta = "0";
  int k = 1;
  int digits = PrimeContext::kDefaultWorkingDigits;
  std::string format = "json";
  std::string base_path;
  std::string chain_path;
  std::string prop;
  int m_max = 5;
  std::uint64_t seed = 1;
};

// Failure raised by the CLI layer itself, already mapped to a status.
struct Exit {
  int status;
  std::string message;
};

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecisionLoss:
    case ErrorCode::kPrecisionExhausted:
    case ErrorCode::kAmbiguousLeading:
    case ErrorCode::kOverflow:
      return kExitPrecisionExhausted;
    case ErrorCode::kNonCoprimeStop:
      return kExitVerificationFailed;
    default:
      return kExitBadInput;
  }
}

bool IsFraction(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den");
}

std::string Scalar(const Json& j) {
  if (IsFraction(j)) {
    const std::int64_t den = j["den"].get<std::int64_t>();
    const std::string num = std::to_string(j["num"].get<std::int64_t>());
    return den == 1 ? num : num + "/" + std::to_string(den);
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void Flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (it.key() == "element" && v.is_object()) {
      out << key << ": series with " << v.value("terms", Json::array()).size()
          << " terms\n";
    } else if (v.is_object() && !IsFraction(v)) {
      Flatten(v, key, out);
    } else if (v.is_array()) {
      out << key << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object() && !IsFraction(v[i])) {
          out << (i ? ", " : "") << "{...}";
        } else {
          out << (i ? ", " : "") << Scalar(v[i]);
        }
      }
      out << "]\n";
    } else {
      out << key << ": " << Scalar(v) << "\n";
    }
  }
}

void Emit(const RunConfig& cfg, const std::string& command, Json body,
          std::ostream& out) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  if (cfg.format == "text") {
    Flatten(doc, "", out);
  } else {
    out << doc.dump(2) << "\n";
  }
}

mpq_class ParseRational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Exit{kExitBadInput, "not a rational: " + s};
  q.canonicalize();
  return q;
}

Exponent ExponentFrom(const Json& j) {
  if (IsFraction(j)) return ExponentFromJson(j);
  if (j.is_number_integer()) return Exponent(j.get<std::int64_t>());
  if (j.is_string()) {
    const mpq_class q = ParseRational(j.get<std::string>());
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) {
      throw Exit{kExitBadInput, "exponent out of range"};
    }
    return Exponent(q.get_num().get_si(), q.get_den().get_si());
  }
  throw Exit{kExitBadInput, "bad exponent " + j.dump()};
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{kExitBadInput, "cannot open " + path};
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Exit{kExitBadInput, path + ": " + e.what()};
  }
}

// A bare series document, or anything carrying one under "element".
SeriesElement ReadBase(const RunConfig& cfg, const ContextPtr& ctx) {
  if (cfg.base_path.empty()) {
    throw Error(ErrorCode::kMissingBaseUniformizer,
                "n >= 2 needs the level (m-1, n) uniformizer via --base");
  }
  const Json j = ReadJsonFile(cfg.base_path);
  try {
    return SeriesFromJson(j.contains("element") ? j["element"] : j, ctx);
  } catch (const Json::exception& e) {
    throw Exit{kExitBadInput, cfg.base_path + ": " + e.what()};
  }
}

SeriesElement BaseUniformizer(const RunConfig& cfg, const ContextPtr& ctx) {
  if (cfg.n == 1) return BuildPiM1(ctx, cfg.m - 1).element;
  return ReadBase(cfg, ctx);
}

Json ResidualJson(const ResidualReport& r) {
  Json j;
  j["precision"] = ExponentToJson(r.precision);
  j["value_valuation"] = ExponentToJson(r.value_valuation);
  j["value_below_bound"] = r.value_below_bound;
  j["derivative_valuation"] = ExponentToJson(r.derivative_valuation);
  j["passed"] = r.passed;
  return j;
}

int CmdZeta(const RunConfig& cfg, const ContextPtr& ctx, std::ostream& out) {
  const ZetaExpansion z = BuildZeta(ctx, cfg.n);
  const ResidualReport r = ResidualCheck(z);
  Json body;
  body["p"] = cfg.p;
  body["n"] = cfg.n;
  body["element"] = SeriesToJson(z.element);
  body["residual"] = ResidualJson(r);
  Emit(cfg, "zeta", body, out);
  return r.passed ? kExitPass : kExitVerificationFailed;
}

// Random digit polynomials of degree <= 8 recovered by digit expansion.
Json DigitRoundTrip(const RunConfig& cfg, const ContextPtr& ctx, bool* ok) {
  const SeriesElement pi = BuildPi21(ctx).element;
  const Exponent e = Valuation(pi);
  const Exponent r = Exponent(8) * e;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> digit(0, static_cast<int>(cfg.p) - 1);
  int passed = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> want(9);
    SeriesElement sum = SeriesElement::Zero(ctx);
    SeriesElement power = SeriesElement::One(ctx);
    for (int i = 0; i <= 8; ++i) {
      want[i] = digit(rng);
      sum = sum + SeriesElement::Integer(ctx, want[i]) * power;
      power = power * pi;
    }
    while (!want.empty() && want.back() == 0) want.pop_back();
    const DigitExpansion got = DigitExpand(ctx, sum, pi, r);
    if (got.digits == want) ++passed;
  }
  *ok = passed == trials;
  Json j;
  j["seed"] = cfg.seed;
  j["trials"] = trials;
  j["recovered"] = passed;
  return j;
}

int CmdVerify(const RunConfig& cfg, const ContextPtr& ctx, std::ostream& out) {
  static const std::map<std::string, std::string> kAliases{
      {"2.3", "zeta-expansion"}, {"2.4", "inverse-power"},
      {"2.5", "abeta-power"},    {"2.6", "partial-sum"},
      {"2.7", "product"}};
  std::string role = cfg.prop;
  if (auto it = kAliases.find(role); it != kAliases.end()) role = it->second;
  const mpq_class beta = ParseRational(cfg.beta);
  Json body;
  body["check"] = role;
  body["p"] = cfg.p;
  body["n"] = cfg.n;
  bool ok = false;
  if (role == "zeta-expansion") {
    const ResidualReport r = ResidualCheck(BuildZeta(ctx, cfg.n));
    body["residual"] = ResidualJson(r);
    ok = r.passed;
  } else if (role == "roundtrip") {
    body["roundtrip"] = DigitRoundTrip(cfg, ctx, &ok);
  } else {
    IdentityCheck c;
    if (role == "inverse-power") {
      c = CheckInversePower(ctx, cfg.n);
    } else if (role == "abeta-power") {
      c = CheckABetaPower(ctx, cfg.n, beta, cfg.k);
      body["k"] = cfg.k;
    } else if (role == "partial-sum") {
      c = CheckPartialSum(ctx, cfg.n, beta);
    } else if (role == "product") {
      c = CheckProduct(ctx, cfg.n, beta);
    } else if (role == "tower") {
      c = CheckTowerCompatibility(ctx, cfg.n);
    } else {
      throw Exit{kExitBadInput, "unknown check '" + cfg.prop + "'"};
    }
    if (role != "inverse-power" && role != "tower") body["beta"] = cfg.beta;
    body["identity"] = c.name;
    body["precision"] = ExponentToJson(c.precision);
    ok = c.holds;
  }
  body["passed"] = ok;
  Emit(cfg, "verify", body, out);
  return ok ? kExitPass : kExitVerificationFailed;
}

int CmdUniformizer(const RunConfig& cfg, const ContextPtr& ctx,
                   std::ostream& out) {
  Json body;
  bool ok = false;
  if (cfg.n == 1) {
    const UniformizerCertificate c = BuildPiM1(ctx, cfg.m);
    body = CertificateToJson(c);
    body["claimed_valuation"] = ExponentToJson(c.claimed_valuation);
    body["method"] = "recursion";
    ok = c.verified;
  } else {
    const AssembledUniformizer a =
        MacLaneUniformizer(ctx, cfg.m, cfg.n, ReadBase(cfg, ctx));
    body = CertificateToJson(a.certificate);
    body["claimed_valuation"] = ExponentToJson(a.certificate.claimed_valuation);
    body["method"] = "maclane";
    ok = a.certificate.verified;
  }
  Emit(cfg, "uniformizer", body, out);
  return ok ? kExitPass : kExitVerificationFailed;
}

int CmdRecurrence(const RunConfig& cfg, const ContextPtr& ctx,
                  std::ostream& out) {
  const AssembledUniformizer a =
      MacLaneUniformizer(ctx, cfg.m, cfg.n, BaseUniformizer(cfg, ctx));
  Emit(cfg, "recurrence", RecipeToJson(a), out);
  return a.certificate.verified ? kExitPass : kExitVerificationFailed;
}

KeyValue KeyValueFrom(const Json& j) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return KeyValue::Infinite();
  if (j.is_object() && j.contains("irrational")) {
    return KeyValue::Irrational(j["irrational"].get<std::string>());
  }
  return KeyValue::Rational(ExponentFrom(j));
}

SeriesElement CoefficientFrom(const Json& j, const ContextPtr& ctx) {
  if (j.is_object()) return SeriesFromJson(j, ctx);
  if (j.is_number_integer()) return SeriesElement::Integer(ctx, j.get<std::int64_t>());
  if (j.is_string()) return SeriesElement::Rational(ctx, ParseRational(j.get<std::string>()));
  throw Exit{kExitBadInput, "bad coefficient " + j.dump()};
}

// {"p": 3, "stages": [{"phi": [-1, 1], "lambda": "1/2"}, ...]} with
// coefficients lowest degree first and lambda a rational, "inf", or
// {"irrational": tag}.
int CmdClassify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.chain_path.empty()) throw Exit{kExitBadInput, "--chain is required"};
  const Json spec = ReadJsonFile(cfg.chain_path);
  try {
    const std::int64_t p = spec.value("p", cfg.p);
    const ContextPtr ctx = PrimeContext::Create(p, cfg.digits);
    InductiveValuation v(ctx, ValueGroup{spec.value("ramification", std::int64_t{1})});
    for (const Json& s : spec.value("stages", Json::array())) {
      std::vector<SeriesElement> coeffs;
      for (const Json& c : s.at("phi")) coeffs.push_back(CoefficientFrom(c, ctx));
      v = v.Augment(PolyOverK(ctx, std::move(coeffs)), KeyValueFrom(s.at("lambda")));
    }
    Json body;
    body["p"] = p;
    body["stages"] = v.stages().size();
    body["type"] = PointTypeName(Classify(v));
    Emit(cfg, "classify", body, out);
    return kExitPass;
  } catch (const Json::exception& e) {
    throw Exit{kExitBadInput, cfg.chain_path + ": " + e.what()};
  }
}

int CmdStability(const RunConfig& cfg, const ContextPtr& ctx,
                 std::ostream& out) {
  const StabilityReport r = StabilityProbe(ctx, cfg.m_max);
  Json body;
  body["p"] = cfg.p;
  body["m_max"] = cfg.m_max;
  Json levels = Json::array();
  for (const StabilityLevel& l : r.levels) {
    Json j;
    j["m"] = l.m;
    j["observed"] = ExponentToJson(l.observed);
    j["expected"] = ExponentToJson(l.expected);
    j["passed"] = l.passed;
    levels.push_back(j);
  }
  body["levels"] = levels;
  body["passed"] = r.passed;
  Emit(cfg, "stability", body, out);
  return r.passed ? kExitPass : kExitVerificationFailed;
}

bool IsOddPrime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Uniformizers of Q_p(zeta_{p^m}, p^{1/p^n})"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--digits", cfg.digits, "working p-adic digits")
      ->check(CLI::Range(2, 30));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  auto common = [&cfg](CLI::App* sub, bool want_m, bool want_n) {
    sub->add_option("--p", cfg.p, "odd prime")->required();
    if (want_m) sub->add_option("--m", cfg.m, "cyclotomic level, m >= 2");
    if (want_n) sub->add_option("--n", cfg.n, "radical level, n >= 1");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--digits", cfg.digits)->check(CLI::Range(2, 30));
    sub->add_option("--seed", cfg.seed);
  };

  CLI::App* zeta = app.add_subcommand("zeta", "expansion of zeta_{p^n} and its residual check");
  common(zeta, false, true);
  CLI::App* verify = app.add_subcommand("verify", "run one engine identity");
  verify->add_option("check", cfg.prop,
                     "zeta-expansion, inverse-power, abeta-power, partial-sum, "
                     "product, tower, roundtrip (or 2.3 .. 2.7)")
      ->required();
  common(verify, false, true);
  verify->add_option("--beta", cfg.beta, "rational beta with p-free denominator");
  verify->add_option("--k", cfg.k, "power for abeta-power, 1..2p-1");
  CLI::App* unif = app.add_subcommand("uniformizer", "certified uniformizer of K^{m,n}");
  common(unif, true, true);
  unif->add_option("--base", cfg.base_path, "series JSON of the level (m-1, n) uniformizer");
  CLI::App* rec = app.add_subcommand("recurrence", "digit recipe from the key-polynomial chain");
  common(rec, true, true);
  rec->add_option("--base", cfg.base_path, "series JSON of the level (m-1, n) uniformizer");
  CLI::App* cls = app.add_subcommand("classify", "point type of an inductive valuation");
  cls->add_option("--chain", cfg.chain_path, "chain description (JSON)")->required();
  cls->add_option("--p", cfg.p, "prime when the file omits it");
  cls->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
  CLI::App* stab = app.add_subcommand("stability", "one recurrence across levels 4..m_max");
  common(stab, false, false);
  stab->add_option("--m-max", cfg.m_max, "last level, >= 4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  try {
    if (cls->parsed()) return CmdClassify(cfg, out);
    if (!IsOddPrime(cfg.p)) throw Exit{kExitBadInput, "p must be an odd prime"};
    if (cfg.m < 2 || cfg.n < 1) throw Exit{kExitBadInput, "need m >= 2 and n >= 1"};
    const ContextPtr ctx = PrimeContext::Create(cfg.p, cfg.digits);
    if (zeta->parsed()) return CmdZeta(cfg, ctx, out);
    if (verify->parsed()) return CmdVerify(cfg, ctx, out);
    if (unif->parsed()) return CmdUniformizer(cfg, ctx, out);
    if (rec->parsed()) return CmdRecurrence(cfg, ctx, out);
    return CmdStability(cfg, ctx, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return StatusFor(e.code());
  }
}

}  // namespace tatetower::cli
