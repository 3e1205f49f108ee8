#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpgrad/abelian.hpp"
#include "dpgrad/errors.hpp"
#include "dpgrad/gradient.hpp"
#include "dpgrad/group_io.hpp"
#include "dpgrad/product_bounds.hpp"
#include "dpgrad/schur.hpp"
#include "dpgrad/small_groups.hpp"
#include "dpgrad/standard_groups.hpp"
#include "dpgrad/subgroup_presentation.hpp"
#include "dpgrad/witt.hpp"

namespace dpgrad::cli {

namespace {

// "p/q", an integer, or a decimal such as 0.05.
Rational parse_rational(const std::string& text) {
  Rational q;
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      q = Rational(text);
    } else {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(text.size() - dot - 1));
      q = Rational(BigInt(digits), den);
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string decimal(const Rational& q) { return Real(q, Round::Nearest).str(12); }

Json schur_row(const FiniteGroup& e, const SchurOptions& opt) {
  const SchurResult m = schur_multiplier(e, opt);
  Json factors = Json::array();
  for (const auto& f : m.multiplier_factors) factors.push_back(big_json(f));
  Json parts = Json::object();
  for (const auto& [p, part] : m.per_prime) parts[std::to_string(p)] = big_json(part);
  Json row;
  row["group"] = e.name();
  row["order"] = e.order();
  row["multiplier"] = factors;
  row["multiplier_order"] = big_json(m.multiplier_order);
  row["p_parts"] = parts;
  return row;
}

const std::vector<std::string> kGradientColumns = {
    "n", "label", "index", "indexA", "indexB", "index_G_AU", "index_G_BU",
    "schreier_generators", "schreier_relators", "tietze_generators", "tietze_relators",
    "bound1", "bound2", "bound3", "smallest_bound", "d_upper", "d_upper_source", "d_lower",
    "betti", "torsion_factors", "torsion_order", "log_torsion", "rank_ratio",
    "rank_ratio_decimal", "torsion_ratio", "hypothesis_ok", "proj_torsion_a",
    "proj_torsion_b", "torsion_bound", "torsion_bound_ok", "nielsen_schreier_ok", "error"};

Json record_json(const GradientRecord& r) {
  Json j;
  j["n"] = r.n;
  j["label"] = r.label;
  j["index"] = r.index;
  j["indexA"] = r.indexA;
  j["indexB"] = r.indexB;
  j["index_G_AU"] = r.index_G_AU;
  j["index_G_BU"] = r.index_G_BU;
  j["schreier_generators"] = r.schreier_generators;
  j["schreier_relators"] = r.schreier_relators;
  j["tietze_generators"] = r.tietze_generators;
  j["tietze_relators"] = r.tietze_relators;
  j["bound1"] = big_json(r.bound1);
  j["bound2"] = big_json(r.bound2);
  j["bound3"] = big_json(r.bound3);
  j["smallest_bound"] = r.smallest_bound;
  j["d_upper"] = big_json(r.d_upper);
  j["d_upper_source"] = r.d_upper_source;
  j["d_lower"] = r.d_lower ? Json(*r.d_lower) : Json();
  j["betti"] = r.betti;
  Json tf = Json::array();
  for (const auto& f : r.torsion_factors) tf.push_back(big_json(f));
  j["torsion_factors"] = tf;
  j["torsion_order"] = big_json(r.torsion_order);
  j["log_torsion"] = r.log_torsion.str(12);
  j["rank_ratio"] = r.rank_ratio.get_str();
  j["rank_ratio_decimal"] = decimal(r.rank_ratio);
  j["torsion_ratio"] = r.torsion_ratio.str(12);
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["proj_torsion_a"] = big_json(r.proj_torsion_a);
  j["proj_torsion_b"] = big_json(r.proj_torsion_b);
  j["torsion_bound"] = r.torsion_bound;
  j["torsion_bound_ok"] = r.torsion_bound_ok;
  j["nielsen_schreier_ok"] = r.nielsen_schreier_ok ? Json(*r.nielsen_schreier_ok) : Json();
  j["error"] = Json();
  return j;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + csv_cell(x);
    return s;
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

std::string error_message(const std::exception_ptr& e, bool& cap) {
  try {
    std::rethrow_exception(e);
  } catch (const CapExceeded& x) {
    cap = true;
    return x.what();
  } catch (const Overflow& x) {
    cap = true;
    return x.what();
  } catch (const std::exception& x) {
    return x.what();
  }
}

}  // namespace

FiniteGroup resolve_group(const std::string& text, const Limits& limits) {
  if (std::filesystem::is_regular_file(text)) return read_group_file(text, limits);
  for (const auto& g : load_small_groups(32))
    if (g.name() == text) return g;
  if (text.size() >= 2 && (text[0] == 'S' || text[0] == 'A') &&
      text.find_first_not_of("0123456789", 1) == std::string::npos) {
    const std::size_t n = std::stoul(text.substr(1));
    if (n >= 1 && n <= 6) return text[0] == 'S' ? symmetric_group(n) : alternating_group(n);
  }
  throw DomainError("no group file or small-group name '" + text + "'");
}

int cmd_witt(const WittConfig& cfg, std::ostream& out) {
  const WittTable table = build_witt_table(cfg.p, cfg.n_max, cfg.alphabet);
  out << witt_csv(table);
  if (cfg.epsilon.empty()) return kPass;
  const RatioReport rep = check_ratio_threshold(table, parse_rational(cfg.epsilon));
  std::string witnesses;
  for (unsigned long n : rep.witnesses) witnesses += (witnesses.empty() ? "" : " ") + std::to_string(n);
  out << "# epsilon " << rep.epsilon << "\n";
  out << "# witnesses " << (witnesses.empty() ? "none" : witnesses) << "\n";
  out << "# max ratio " << rep.max_ratio << " = " << decimal(rep.max_ratio) << "\n";
  out << "# max growth " << rep.max_growth << " = " << decimal(rep.max_growth) << "\n";
  out << "# growth at least 19/10 from n = " << rep.growth_from << "\n";
  out << "# ratio identity " << (rep.identity_holds ? "holds" : "fails") << "\n";
  return rep.identity_holds ? kPass : kCheckFailed;
}

int cmd_schur(const SchurConfig& cfg, std::ostream& out) {
  if (cfg.groups.empty() && cfg.max_order == 0)
    throw DomainError("give --group or --max-order");
  std::vector<FiniteGroup> groups;
  for (const auto& g : cfg.groups) groups.push_back(resolve_group(g));
  if (cfg.max_order)
    for (auto& g : load_small_groups(cfg.max_order)) groups.push_back(std::move(g));
  SchurOptions opt;
  opt.homology_cap = cfg.homology_cap;
  opt.parallel = cfg.parallel;
  out << Json{{"format", "dpgrad-schur v1"}, {"groups", groups.size()}}.dump() << "\n";
  for (const auto& g : groups) out << schur_row(g, opt).dump() << "\n";
  return kPass;
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  const SuiteReport rep = run_suite(cfg.suite, cfg.options);
  Json header;
  header["format"] = "dpgrad-report v1";
  header["suite"] = cfg.suite;
  if (cfg.suite != "recursion-step")
    header["max_order"] = cfg.options.max_order ? cfg.options.max_order : default_max_order(cfg.suite);
  out << header.dump() << "\n";
  for (const auto& row : rep.rows)
    if (!cfg.failures_only || !row.at("ok").get<bool>()) out << row.dump() << "\n";
  out << Json{{"summary", rep.summary}}.dump() << "\n";
  return rep.pass() ? kPass : kCheckFailed;
}

int cmd_gradient(const GradientConfig& cfg, std::ostream& out) {
  if (cfg.format != "json" && cfg.format != "csv")
    throw DomainError("format must be json or csv");
  const SequenceSpec spec = read_sequence_spec(cfg.spec_path);
  const auto levels = run_sequence_levels(spec, cfg.parallel);

  std::vector<GradientRecord> records;
  std::vector<Json> rows;
  bool cap = false, checks_ok = true;
  std::vector<std::size_t> unmet;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].record) {
      const GradientRecord& r = *levels[i].record;
      rows.push_back(record_json(r));
      records.push_back(r);
      if (!r.hypothesis_ok) unmet.push_back(r.n);
      if (!r.torsion_bound_ok || (r.nielsen_schreier_ok && !*r.nielsen_schreier_ok)) checks_ok = false;
    } else {
      Json j;
      for (const auto& c : kGradientColumns) j[c] = Json();
      j["n"] = i + 1;
      j["label"] = spec.levels[i].label;
      j["error"] = error_message(levels[i].error, cap);
      rows.push_back(std::move(j));
      checks_ok = false;
    }
  }

  Json summary;
  summary["levels"] = levels.size();
  summary["computed"] = records.size();
  std::string text;
  if (!records.empty()) {
    const Rational rg = rank_gradient_estimate(records);
    const Real tg = torsion_gradient_estimate(records);
    summary["rank_gradient"] = rg.get_str();
    summary["rank_gradient_decimal"] = decimal(rg);
    summary["rank_gradient_label"] = "estimate (upper bound)";
    summary["torsion_gradient"] = tg.str(12);
    summary["torsion_gradient_label"] = "estimate (minimum over computed levels)";
    text = "rank gradient estimate (upper bound) " + rg.get_str() + " = " + decimal(rg) +
           "; torsion gradient estimate (minimum over computed levels) " + tg.str(12);
  } else {
    text = "no level computed";
  }
  if (unmet.empty()) {
    summary["hypothesis"] = "index-growth hypothesis met";
    summary["rank_ratio_decreasing"] = rank_ratio_decreasing(records);
    summary["torsion_ratio_decreasing"] = torsion_ratio_decreasing(records);
    text += "; index-growth hypothesis met";
  } else {
    std::string at;
    for (std::size_t n : unmet) at += (at.empty() ? "" : ", ") + std::to_string(n);
    summary["hypothesis"] = "index-growth hypothesis not met at n = " + at;
    summary["trend"] = "not asserted";
    text += "; index-growth hypothesis not met at n = " + at + "; no trend asserted";
  }
  summary["text"] = text;

  if (cfg.format == "json") {
    out << Json{{"format", "dpgrad-gradient v1"}, {"name", spec.name}, {"kind", to_string(spec.kind)}}.dump()
        << "\n";
    for (const auto& j : rows) out << j.dump() << "\n";
    out << Json{{"summary", summary}}.dump() << "\n";
  } else {
    out << "# dpgrad-gradient v1 name=" << spec.name << " kind=" << to_string(spec.kind) << "\n";
    for (std::size_t c = 0; c < kGradientColumns.size(); ++c) out << (c ? "," : "") << kGradientColumns[c];
    out << "\n";
    for (const auto& j : rows) {
      for (std::size_t c = 0; c < kGradientColumns.size(); ++c)
        out << (c ? "," : "") << csv_cell(j.at(kGradientColumns[c]));
      out << "\n";
    }
    out << "# summary: " << text << "\n";
  }
  if (cap) return kCap;
  return checks_ok ? kPass : kCheckFailed;
}

int cmd_bounds(const BoundsConfig& cfg, std::ostream& out) {
  const FiniteGroup A = resolve_group(cfg.a, cfg.limits), B = resolve_group(cfg.b, cfg.limits);
  const UniverseReport u = run_product_pair(A, B, cfg.parallel, cfg.limits);
  out << Json{{"format", "dpgrad-bounds v1"}, {"A", A.name()}, {"B", B.name()},
              {"enumeration", u.enumeration}}.dump()
      << "\n";
  std::size_t failures = 0;
  for (const auto& in : u.instances) {
    const Json row = instance_row(in);
    failures += !row.at("ok").get<bool>();
    out << row.dump() << "\n";
  }
  out << Json{{"summary", {{"subgroups", u.instances.size()}, {"failures", failures}}}}.dump() << "\n";
  return failures ? kCheckFailed : kPass;
}

int cmd_present(const PresentConfig& cfg, std::ostream& out) {
  if (cfg.action == "snf") {
    std::ifstream in(cfg.input);
    if (!in) throw ParseError("cannot open " + cfg.input);
    const SmithResult s = smith_normal_form(read_matrix(in));
    out << "rank " << s.rank << "\nfactors";
    for (const auto& f : s.factors) out << ' ' << f;
    out << "\n";
    return kPass;
  }
  const Presentation p = read_presentation_file(cfg.input);
  EnumerationOptions opt;
  opt.max_cosets = cfg.max_cosets;
  const std::vector<Word> h = cfg.subgroup.empty() ? std::vector<Word>{} : read_subgroup_file(cfg.subgroup);
  if (cfg.action == "enumerate") {
    const CosetTable t = coset_enumerate(p, h, opt);
    out << Json{{"index", t.index()}, {"cosets_defined", t.total_defined}}.dump() << "\n";
  } else if (cfg.action == "abelianize") {
    out << to_string(abelian_invariants(p)) << "\n";
  } else if (cfg.action == "subgroup") {
    const SubgroupPresentation sp = subgroup_presentation(p, h, opt);
    const SubgroupPresentation simple = tietze_simplify(sp, cfg.tietze_effort);
    out << "# index " << coset_enumerate(p, h, opt).index() << "\n";
    out << "# schreier generators " << sp.rank() << ", relators " << sp.relators.size() << "\n";
    out << "# abelianization " << to_string(abelian_invariants(simple)) << "\n";
    out << format_presentation(simple.presentation());
  } else {
    throw DomainError("unknown action '" + cfg.action + "'");
  }
  return kPass;
}

}  // namespace dpgrad::cli
