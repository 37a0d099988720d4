#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "decalage/errors.hpp"
#include "decalage/io.hpp"
#include "decalage/lemmas.hpp"
#include "decalage/ss.hpp"
#include "decalage/theorem.hpp"

#ifndef DECALAGE_DEFAULT_FIXTURES
#define DECALAGE_DEFAULT_FIXTURES "fixtures"
#endif

namespace decalage::cli {

namespace {

struct Instance {
  std::string id;
  SheafComplex sheaf;
  std::string inject;  // check id forced to fail; exercises the exit-code path
};

// Input problems (exit 2) as opposed to invalid mathematical data (exit 1).
struct InputError : Error {
  using Error::Error;
};

std::vector<Instance> load_instances(const RunConfig& cfg) {
  std::vector<Instance> out;
  if (!cfg.generate.empty()) {
    if (cfg.count < 1 || cfg.max_degree < 1 || cfg.max_rank < 1 || cfg.budget < 1)
      throw InputError("--count, --max-degree, --max-rank and --budget must be positive");
    GenerationOptions opt;
    opt.site = site_from_spec(cfg.poset);
    opt.ring = ring_from_spec(cfg.ring, cfg.xi);
    opt.max_degree = cfg.max_degree;
    opt.max_rank = static_cast<std::size_t>(cfg.max_rank);
    opt.budget = cfg.budget;
    for (int j = 0; j < cfg.count; ++j) {
      const std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(j);
      out.push_back({cfg.generate + "-" + std::to_string(s), generate_instance(cfg.generate, s, opt), ""});
    }
  }
  for (const auto& spec : cfg.inputs) {
    const std::string path = resolve_input(spec);
    Json j = read_json_file(path);
    std::string inject;
    if (j.is_object() && j.contains("inject_failure")) inject = j["inject_failure"].get<std::string>();
    out.push_back({std::filesystem::path(path).stem().string(), instance_from_json(j), inject});
  }
  if (out.empty()) throw InputError("no input: give a path or --generate <profile>");
  return out;
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- validate -------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.empty()) throw InputError("validate needs a path");
  Json all = Json::array();
  std::ostringstream text;
  int code = kPass;
  for (const auto& spec : cfg.inputs) {
    const std::string path = resolve_input(spec);
    const std::string id = std::filesystem::path(path).stem().string();
    Json j = read_json_file(path);
    try {
      SheafComplex f = instance_from_json(j);
      all.push_back({{"id", id}, {"valid", true}, {"elements", f.site().size()}, {"lo", f.lo()}, {"hi", f.hi()}});
      text << "valid: " << id << " (" << f.site().size() << " element site, degrees " << f.lo() << ".." << f.hi()
           << ", " << f.ring().describe() << ")\n";
    } catch (const DifferentialSquareNonzero& e) {
      code = kViolation;
      all.push_back({{"id", id}, {"valid", false}, {"witness", e.what()}});
      text << "invalid: " << id << ": " << e.what() << "\n";
    } catch (const InvalidSheaf& e) {
      code = kViolation;
      all.push_back({{"id", id}, {"valid", false}, {"witness", e.what()}});
      text << "invalid: " << id << ": " << e.what() << "\n";
    }
  }
  emit(cfg, out, cfg.format == "json" ? dump(Json{{"command", "validate"}, {"results", all}, {"exit_code", code}})
                                      : text.str());
  return code;
}

// --- check-lemmas ---------------------------------------------------------------

int cmd_check_lemmas(const RunConfig& cfg, std::ostream& out) {
  std::vector<Instance> insts = load_instances(cfg);
  Json list = Json::array();
  std::ostringstream text;
  std::string first_witness;
  bool all_pass = true;
  for (const auto& inst : insts) {
    // the lemmas concern a single complex: run them on RGamma, and on every
    // stalk when the site has more than one element
    std::vector<std::pair<std::string, FreeComplex>> targets{{"RGamma", global_sections(inst.sheaf)}};
    if (inst.sheaf.site().size() > 1)
      for (std::size_t x = 0; x < inst.sheaf.site().size(); ++x)
        targets.emplace_back("stalk:" + inst.sheaf.site().name(x), inst.sheaf.stalk(x));
    Json tj = Json::array();
    bool inst_pass = true;
    for (const auto& [name, k] : targets) {
      std::vector<CheckResult> checks = run_lemma_suite(k, cfg.lift_rounds, cfg.seed);
      for (auto& c : checks)
        if (c.id == inst.inject) c.fail("injected failure");
      Json cj = Json::array();
      for (const auto& c : checks) {
        cj.push_back(to_json(c));
        if (!c.pass) {
          inst_pass = false;
          if (first_witness.empty()) first_witness = inst.id + " / " + name + " / " + c.id + ": " + c.witness;
        }
        text << verdict(c.pass) << "  " << inst.id << "  " << name << "  " << c.id;
        if (!c.pass) text << ": " << c.witness;
        text << "\n";
      }
      tj.push_back({{"target", name}, {"checks", cj}});
    }
    all_pass = all_pass && inst_pass;
    list.push_back({{"id", inst.id}, {"pass", inst_pass}, {"targets", tj}});
  }
  const int code = all_pass ? kPass : kViolation;
  if (!all_pass) text << "first failure: " << first_witness << "\n";
  text << (all_pass ? "all lemma checks passed" : "lemma checks failed") << " (" << insts.size() << " instances)\n";
  emit(cfg, out,
       cfg.format == "json"
           ? dump(Json{{"command", "check-lemmas"}, {"seed", cfg.seed}, {"instances", list}, {"pass", all_pass}, {"exit_code", code}})
           : text.str());
  return code;
}

// --- check-theorem --------------------------------------------------------------

int cmd_check_theorem(const RunConfig& cfg, std::ostream& out) {
  std::vector<Instance> insts = load_instances(cfg);
  Json list = Json::array();
  std::ostringstream text;
  int code = kPass;
  for (const auto& inst : insts) {
    TheoremReport rep = verify_main_theorem(inst.sheaf);
    for (auto& c : rep.checks)
      if (c.id == inst.inject) c.fail("injected failure");
    rep.pass = rep.asserted && std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.pass; });
    const int ec = rep.exit_code();
    // 1 dominates 3 dominates 0
    if (ec == kViolation || (ec == kHypothesesNotMet && code == kPass)) code = ec;
    Json rj = report_to_json(rep);
    list.push_back({{"id", inst.id}, {"exit_code", ec}, {"report", rj}});

    text << inst.id << ": H1 " << (rep.h1 ? "holds" : "fails") << ", H3 " << (rep.h3 ? "holds" : "fails");
    if (!rep.h1) text << " [" << rep.h1_witness << "]";
    if (!rep.h3) text << " [" << rep.h3_witness << "]";
    text << "\n";
    for (const auto& f : rep.flags) {
      text << "  degree " << f.i << ": relative position (";
      for (std::size_t n = 0; n < f.relative_position.size(); ++n) text << (n ? "," : "") << f.relative_position[n];
      text << "), flags " << (f.equal ? "equal" : "differ") << ", graded dims " << (f.graded_match ? "match" : "differ") << "\n";
    }
    for (const auto& c : rep.checks) {
      text << "  " << (rep.asserted ? verdict(c.pass) : std::string(c.pass ? "ok  " : "n/a ")) << "  " << c.id;
      if (!c.pass) text << ": " << c.witness;
      text << "\n";
    }
    if (ec == kViolation) text << dump(rj);
    text << "  => " << (ec == kPass ? "pass" : ec == kViolation ? "VIOLATION" : "hypotheses not met") << "\n";
  }
  emit(cfg, out,
       cfg.format == "json" ? dump(Json{{"command", "check-theorem"}, {"seed", cfg.seed}, {"instances", list}, {"exit_code", code}})
                            : text.str());
  return code;
}

// --- ss -------------------------------------------------------------------------

int cmd_ss(const RunConfig& cfg, std::ostream& out) {
  if (cfg.filtration != "tau" && cfg.filtration != "hodge") throw InputError("--filtration must be tau or hodge");
  if (cfg.pages < 1) throw InputError("--pages must be positive");
  std::vector<Instance> insts = load_instances(cfg);
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& inst : insts) {
    const bool tau = cfg.filtration == "tau";
    // tau pages start at E_2, hodge pages at E_1
    const int r_max = (tau ? 1 : 0) + cfg.pages;
    std::vector<SSPage> pages = tau ? ht_spectral_sequence(inst.sheaf, r_max) : hdr_spectral_sequence(inst.sheaf, r_max);
    Degeneration d = tau ? degeneration_check_HT(inst.sheaf) : degeneration_check_HdR(inst.sheaf);
    Json pj = Json::array();
    text << inst.id << " (" << (tau ? "truncation" : "Hodge") << " filtration)\n";
    for (const auto& p : pages) {
      pj.push_back(page_to_json(p));
      text << render_page(p);
    }
    text << (d.degenerates ? "degenerates\n" : "does not degenerate: " + d.witness + "\n");
    list.push_back({{"id", inst.id}, {"filtration", cfg.filtration}, {"pages", pj}, {"degenerates", d.degenerates}});
  }
  emit(cfg, out, cfg.format == "json" ? dump(Json{{"command", "ss"}, {"instances", list}, {"exit_code", 0}}) : text.str());
  return kPass;
}

}  // namespace

std::string fixture_dir() {
  const char* env = std::getenv("DECALAGE_FIXTURES");
  return env && *env ? env : DECALAGE_DEFAULT_FIXTURES;
}

std::string resolve_input(const std::string& spec) {
  if (spec.rfind("fixture:", 0) == 0) return (std::filesystem::path(fixture_dir()) / (spec.substr(8) + ".json")).string();
  return spec;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "text" && cfg.format != "json") throw InputError("--format must be text or json");
    if (cfg.command == "validate") return cmd_validate(cfg, out);
    if (cfg.command == "check-lemmas") return cmd_check_lemmas(cfg, out);
    if (cfg.command == "check-theorem") return cmd_check_theorem(cfg, out);
    if (cfg.command == "ss") return cmd_ss(cfg, out);
    throw InputError("unknown command '" + cfg.command + "'");
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeMismatch& e) {
    err << "malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const GenerationBudgetExceeded& e) {
    err << "generation failed: " << e.what() << "\n";
    return kInputError;
  } catch (const DifferentialSquareNonzero& e) {
    err << "invalid instance: " << e.what() << "\n";
    return kViolation;
  } catch (const InvalidSheaf& e) {
    err << "invalid instance: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace decalage::cli
