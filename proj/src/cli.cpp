#include "leforge/cli.hpp"

#include <cstdlib>
#include <functional>
#include <sstream>

#include "leforge/deform.hpp"
#include "leforge/error.hpp"
#include "leforge/parse.hpp"

namespace leforge {

using nlohmann::json;

namespace {

const std::vector<std::string> kTasks{"milnor",          "le-numbers",     "ipa-check",    "ndot",
                                      "verify-milnor",   "verify-eq2",     "verify-slice", "verify-ipa2",
                                      "verify-main",     "surface-invariants", "verify-surface",
                                      "verify-corollary"};

// json accessors that fail with ParseError instead of json's own exceptions
const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const std::string& what) {
  if (!j.is_string()) throw ParseError(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> strings(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(str(e, what));
  return out;
}

Poly parse_in(const std::string& text, const VarRing& r, const std::string& what) {
  try {
    return parse_poly(text, r);
  } catch (const ParseError& e) {
    throw ParseError(what + " '" + text + "': " + e.what());
  }
}

std::uint64_t unsigned_opt(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ParseError(what + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

Parameterization parse_map(const json& obj, const VarRing& target) {
  VarRing source(strings(field(obj, "source_vars"), "source_vars"));
  std::vector<std::vector<std::string>> raw;
  if (obj.contains("components") == obj.contains("branches"))
    throw ParseError("map needs exactly one of 'components' or 'branches'");
  if (obj.contains("components")) {
    raw.push_back(strings(obj.at("components"), "components"));
  } else {
    if (!obj.at("branches").is_array() || obj.at("branches").empty())
      throw ParseError("branches must be a nonempty list");
    for (const auto& b : obj.at("branches")) raw.push_back(strings(b, "branch"));
  }
  std::vector<std::vector<Poly>> branches;
  for (const auto& b : raw) {
    if (b.size() != target.size())
      throw ParseError("branch has " + std::to_string(b.size()) + " components, ring has " +
                       std::to_string(target.size()) + " variables");
    std::vector<Poly> comps;
    for (const auto& c : b) comps.push_back(parse_in(c, source, "component"));
    branches.push_back(std::move(comps));
  }
  return Parameterization(source, target, std::move(branches));
}

/// Normalization of a product of distinct variables: one linear branch per
/// factor. Source variables keep the ring's names where possible.
std::optional<Parameterization> crossing_normalization(const Poly& f) {
  if (f.terms().size() != 1) return std::nullopt;
  const Monomial& m = f.terms()[0].mono;
  const VarRing& r = f.ring();
  std::vector<std::size_t> factors;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (m[i] > 1) return std::nullopt;
    if (m[i] == 1) factors.push_back(i);
  }
  if (factors.empty() || r.size() < 2) return std::nullopt;
  std::vector<std::string> names;
  bool keep_first = m[0] == 0;
  if (keep_first) names.push_back(r.name(0));
  while (names.size() + 1 < r.size()) names.push_back(r.fresh_name("u" + std::to_string(names.size())));
  VarRing source(names);
  std::vector<std::vector<Poly>> branches;
  for (std::size_t v : factors) {
    std::vector<Poly> comps;
    std::size_t next = 0;
    for (std::size_t j = 0; j < r.size(); ++j)
      comps.push_back(j == v ? Poly(source) : Poly::variable(source, next++));
    branches.push_back(std::move(comps));
  }
  return Parameterization(source, r, std::move(branches));
}

json verdicts_json(const Verdicts& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json e{{"name", v.name}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"status", v.pass ? "pass" : "fail"}};
    if (!v.lhs_desc.empty()) e["lhs_desc"] = v.lhs_desc;
    if (!v.rhs_desc.empty()) e["rhs_desc"] = v.rhs_desc;
    if (!v.note.empty()) e["note"] = v.note;
    out.push_back(std::move(e));
  }
  return out;
}

json report_json(const Report& r) {
  json out{{"verdicts", verdicts_json(r.verdicts)}, {"values", json::object()}};
  for (const auto& [k, v] : r.values) out["values"][k] = v;
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

class Job {
 public:
  Job(const json& job, const RunOverrides& ov) : job_(job) {
    if (!job.is_object()) throw ParseError("job must be a JSON object");
    const json opts = job.contains("options") ? job.at("options") : json::object();
    if (!opts.is_object()) throw ParseError("options must be an object");

    seed_ = 0;
    if (const char* env = std::getenv("LEFORGE_SEED"); env && *env) {
      char* end = nullptr;
      seed_ = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') throw ParseError("LEFORGE_SEED is not an integer");
    }
    if (opts.contains("seed")) seed_ = unsigned_opt(opts.at("seed"), "options.seed");
    if (ov.seed) seed_ = *ov.seed;

    Limits lim;
    if (opts.contains("kmax")) lim.k_max = static_cast<unsigned>(unsigned_opt(opts.at("kmax"), "options.kmax"));
    if (opts.contains("max_degree"))
      lim.max_degree = static_cast<unsigned>(unsigned_opt(opts.at("max_degree"), "options.max_degree"));
    if (ov.k_max) lim.k_max = *ov.k_max;
    if (ov.max_degree) lim.max_degree = *ov.max_degree;
    ctx_ = Context(seed_, lim);

    params_ = default_slice_params();
    if (opts.contains("t0")) {
      params_.clear();
      for (const auto& s : strings(opts.at("t0"), "options.t0")) {
        Poly p = parse_in(s, VarRing(), "t0");
        if (!p.is_constant() || p.is_zero()) throw ParseError("t0 '" + s + "' must be a nonzero rational");
        params_.push_back(p.constant_term());
      }
    }

    ring_ = VarRing(strings(field(job, "ring"), "ring"));
    const json& obj = field(job, "object");
    std::string kind = str(field(obj, "kind"), "object.kind");
    if (kind == "hypersurface") {
      f_ = parse_in(str(field(obj, "f"), "object.f"), ring_, "f");
      if (obj.contains("normalization")) map_ = parse_map(obj.at("normalization"), ring_);
      else map_ = crossing_normalization(*f_);
    } else if (kind == "map") {
      map_ = parse_map(obj, ring_);
    } else {
      throw ParseError("object.kind must be 'hypersurface' or 'map'");
    }

    tasks_ = strings(field(job, "tasks"), "tasks");
    if (tasks_.empty()) throw ParseError("tasks is empty");
    for (const auto& t : tasks_)
      if (std::find(kTasks.begin(), kTasks.end(), t) == kTasks.end()) throw ParseError("unknown task '" + t + "'");

    std::vector<std::string> entries;
    if (job.contains("coords")) entries = strings(job.at("coords"), "coords");
    else entries.assign(ring_.size(), "generic");
    if (entries.size() != ring_.size())
      throw ParseError("coords has " + std::to_string(entries.size()) + " entries, ring has " +
                       std::to_string(ring_.size()) + " variables");
    coords_ = CoordTuple::parse(ring_, entries, ctx_.rng);
  }

  std::uint64_t seed() const { return seed_; }
  const std::vector<std::string>& tasks() const { return tasks_; }
  const CoordTuple& coords() const { return coords_; }

  json run(const std::string& task) {
    if (task == "milnor") return {{"mu", milnor_number(hypersurface(), ctx_.limits)}};
    if (task == "le-numbers") {
      LeNumbers le = le_numbers(hypersurface(), coords_, ctx_);
      json out{{"sigma_dim", le.sigma_dim}, {"stabilized_at", le.max_stabilized_at}};
      for (const auto& [i, v] : le.values) out["lambda" + std::to_string(i)] = v;
      for (const auto& [k, v] : le.polar_numbers) out["polar" + std::to_string(k)] = v;
      return out;
    }
    if (task == "ipa-check") {
      IpaCheck c = is_ipa_deformation(hypersurface(), coords_, ctx_.limits);
      json out{{"ipa", c.ipa}, {"via_f", c.via_f}};
      if (!c.warning.empty()) out["warning"] = c.warning;
      return out;
    }
    if (task == "ndot") {
      NdotMultiplicities n = ndot_multiplicities(map(), coords_, ctx_);
      json out{{"n", n.n}, {"m0", n.m_origin}, {"components", n.components.size()}};
      for (const auto& [i, v] : n.lambda) out["lambda" + std::to_string(i)] = v;
      return out;
    }
    if (task == "verify-milnor") return report_json(verify_milnor_formula(map(), ctx_, params_));
    if (task == "verify-eq2") return report_json(verify_eq2_windows(map(), ctx_, params_));
    if (task == "verify-slice") {
      Report r{task, verify_slice_formula(hypersurface(), coords_, ctx_), {}, {}};
      return report_json(r);
    }
    if (task == "verify-ipa2") return report_json(verify_ipaimplies2(map(), coords_, ctx_));
    if (task == "verify-main") {
      if (f_ && !map_) return report_json(verify_thm_main(*f_, coords_, ctx_, params_));
      return report_json(verify_thm_main(map(), coords_, ctx_, params_));
    }
    if (task == "surface-invariants") {
      SurfaceInvariants s = surface_invariants(map(), coords_, ctx_, params_);
      json out{{"T", s.T}, {"C", s.C}, {"delta", s.delta}, {"P", s.P}, {"P_z", s.P_z},
               {"T_slice", s.T_slice}, {"C_slice", s.C_slice}, {"t0", to_string(s.t0)}};
      if (s.chi_link) out["chi_link"] = *s.chi_link;
      if (!s.notes.empty()) out["notes"] = s.notes;
      return out;
    }
    if (task == "verify-surface") return report_json(verify_thm_surface(map(), coords_, ctx_, params_));
    return report_json(verify_cor_surface(map(), coords_, ctx_, params_));
  }

 private:
  const Poly& hypersurface() {
    if (!f_) f_ = image_equation(*map_, ctx_.limits);
    return *f_;
  }
  const Parameterization& map() const {
    if (!map_) throw PreconditionError("task needs a parameterization; give object.normalization");
    return *map_;
  }

  json job_;
  std::uint64_t seed_ = 0;
  Context ctx_;
  std::vector<Rational> params_;
  VarRing ring_;
  std::optional<Poly> f_;
  std::optional<Parameterization> map_;
  std::vector<std::string> tasks_;
  CoordTuple coords_;
};

json error_json(const char* kind, const std::string& message, const std::string& task) {
  json e{{"kind", kind}, {"message", message}};
  if (!task.empty()) e["task"] = task;
  return e;
}

}  // namespace

std::string render_verdict(bool pass, std::int64_t lhs, std::int64_t rhs) {
  return std::string(pass ? "PASS " : "FAIL ") + std::to_string(lhs) + (pass ? " = " : " ≠ ") +
         std::to_string(rhs);
}

RunResult run_job(const json& job_doc, const RunOverrides& ov) {
  RunResult res;
  json& rep = res.report;
  rep["version"] = kVersion;
  rep["job"] = job_doc;
  rep["results"] = json::array();
  std::string current;
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    res.exit_code = code;
    rep["error"] = error_json(kind, msg, current);
  };
  try {
    Job job(job_doc, ov);
    rep["seed"] = job.seed();
    rep["coords"] = job.coords().describe();
    bool all_pass = true;
    for (const auto& task : job.tasks()) {
      current = task;
      json r = job.run(task);
      if (r.contains("verdicts"))
        for (const auto& v : r["verdicts"]) all_pass = all_pass && v["status"] == "pass";
      r["task"] = task;
      rep["results"].push_back(std::move(r));
    }
    res.exit_code = all_pass ? kOk : kVerdictFailed;
  } catch (const ParseError& e) {
    fail(kParse, "parse", e.what());
  } catch (const PreconditionError& e) {
    fail(kPrecondition, "precondition", e.what());
  } catch (const ResourceError& e) {
    fail(kResource, "resource", e.what());
  } catch (const SamplingError& e) {
    fail(kResource, "sampling", e.what());
  } catch (const json::exception& e) {
    fail(kParse, "parse", e.what());
  }
  rep["exit_code"] = res.exit_code;
  return res;
}

RunResult run_job_text(const std::string& text, const RunOverrides& ov) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    RunResult res;
    res.exit_code = kParse;
    res.report = {{"version", kVersion},
                  {"results", json::array()},
                  {"exit_code", kParse},
                  {"error", error_json("parse", e.what(), "")}};
    return res;
  }
  return run_job(doc, ov);
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_text(const json& report) {
  std::ostringstream out;
  out << report.value("version", "") << "  seed " << report.value("seed", std::uint64_t{0}) << "\n";
  if (report.contains("coords")) {
    out << "coords:";
    for (const auto& c : report["coords"]) out << " " << c.get<std::string>();
    out << "\n";
  }
  for (const auto& r : report["results"]) {
    out << "[" << r["task"].get<std::string>() << "]\n";
    if (r.contains("verdicts")) {
      std::size_t w = 0;
      for (const auto& v : r["verdicts"]) w = std::max(w, v["name"].get<std::string>().size());
      for (const auto& v : r["verdicts"]) {
        std::string name = v["name"];
        out << "  " << name << std::string(w - name.size() + 2, ' ')
            << render_verdict(v["status"] == "pass", v["lhs"].get<std::int64_t>(), v["rhs"].get<std::int64_t>())
            << "\n";
      }
      for (const auto& [k, v] : r["values"].items()) out << "  " << k << " = " << v.dump() << "\n";
    } else {
      for (const auto& [k, v] : r.items())
        if (k != "task" && k != "notes") out << "  " << k << " = " << v.dump() << "\n";
    }
    if (r.contains("notes"))
      for (const auto& n : r["notes"]) out << "  note: " << n.get<std::string>() << "\n";
  }
  if (report.contains("error")) {
    const auto& e = report["error"];
    out << "error (" << e["kind"].get<std::string>() << "): " << e["message"].get<std::string>() << "\n";
  }
  out << "exit " << report.value("exit_code", 0) << "\n";
  return out.str();
}

}  // namespace leforge
