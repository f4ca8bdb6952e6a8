#include "affcoh/experiments.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

using namespace affcoh;

namespace {

struct cli_opts {
  exp_config cfg;
  std::string window;
  std::string format = "json";
  std::string out;
  std::string config_path;
  std::vector<std::string> only;
};

/* every subcommand carries the same option set; remembering the subcommands
 * lets the merge step ask whether a flag was given on whichever one ran */
std::vector<CLI::App*> option_hosts;

void add_options(CLI::App* sub, cli_opts& o) {
  sub->add_option("--m", o.cfg.m, "space dimension, 2 or 3");
  sub->add_option("--degree", o.cfg.degree, "symbolic probe degree, 1..6");
  sub->add_option("--window", o.window, "weight window LO:HI");
  sub->add_option("--format", o.format, "report format: json, csv or md");
  sub->add_option("--out", o.out, "write the report to a file");
  sub->add_option("--config", o.config_path,
                  "read options from a JSON file; flags win");
  option_hosts.push_back(sub);
}

bool given(const std::string& name) {
  for (auto* s : option_hosts)
    if (s->count(name)) return true;
  return false;
}

long int_arg(const std::string& flag, const std::string& v) {
  try {
    size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return n;
  } catch (...) {
    throw error(flag + " needs an integer, got '" + v + "'");
  }
}

void apply_window(const std::string& v, exp_config& cfg) {
  size_t c = v.find(':');
  if (c == std::string::npos)
    throw error("--window needs LO:HI, got '" + v + "'");
  cfg.w_lo = int_arg("--window", v.substr(0, c));
  cfg.w_hi = int_arg("--window", v.substr(c + 1));
}

/* strict reader for the flat configuration schema; flags already given on
 * the command line keep their values */
void load_config(const std::string& path, cli_opts& o) {
  std::ifstream f(path);
  if (!f) throw error("cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw error("config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw error("config: expected a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "m" || key == "degree") {
      if (!val.is_number_integer())
        throw error("config: " + key + " must be an integer");
      if (!given("--" + key)) (key == "m" ? o.cfg.m : o.cfg.degree) = val.get<int>();
    } else if (key == "window") {
      if (!(val.is_array() && val.size() == 2 && val[0].is_number_integer() &&
            val[1].is_number_integer()))
        throw error("config: window must be [lo, hi]");
      if (!given("--window")) {
        o.cfg.w_lo = val[0].get<long>();
        o.cfg.w_hi = val[1].get<long>();
      }
    } else if (key == "format") {
      if (!val.is_string()) throw error("config: format must be a string");
      if (!given("--format")) o.format = val.get<std::string>();
    } else if (key == "out") {
      if (!val.is_string()) throw error("config: out must be a string");
      if (!given("--out")) o.out = val.get<std::string>();
    } else if (key == "experiments") {
      if (!val.is_array()) throw error("config: experiments must be a list of names");
      o.only.clear();
      for (const auto& e : val) {
        if (!e.is_string())
          throw error("config: experiments must be a list of names");
        o.only.push_back(e.get<std::string>());
      }
    } else {
      throw error("config: unknown key '" + key + "'");
    }
  }
}

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int emit(const std::vector<exp_report>& rs, const cli_opts& o) {
  std::string text;
  if (o.format == "json") text = reports_json(rs, now_utc());
  else if (o.format == "csv") text = reports_csv(rs);
  else text = reports_md(rs);
  if (text.empty() || text.back() != '\n') text += '\n';
  if (o.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream f(o.out);
  if (!f) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", o.out.c_str());
    return 1;
  }
  f << text;
  f.flush();
  if (!f) {
    std::fprintf(stderr, "error: writing %s failed\n", o.out.c_str());
    return 1;
  }
  return 0;
}

void print_report(const exp_report& r) {
  std::printf("%-18s %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL");
  std::printf("    expected  %s [%s]\n", r.expected.c_str(), r.provenance.c_str());
  std::printf("    computed  %s\n", r.computed.c_str());
  for (const auto& n : r.notes) std::printf("    note      %s\n", n.c_str());
  std::printf("    runtime   %ld ms\n", r.runtime_ms);
}

std::vector<std::string> selected(const cli_opts& o) {
  if (o.only.empty()) return experiment_catalog();
  const auto& cat = experiment_catalog();
  for (const auto& n : o.only)
    if (std::find(cat.begin(), cat.end(), n) == cat.end())
      throw error("unknown experiment: " + n);
  return o.only;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations on polynomial vector fields: cohomology "
               "experiments and consistency suites"};
  app.require_subcommand(1);

  cli_opts o;
  std::string run_name;

  auto* check_cmd = app.add_subcommand("check", "run the internal consistency suites");
  auto* run_cmd = app.add_subcommand("run", "run one cataloged experiment");
  run_cmd->add_option("experiment", run_name, "experiment name from `list`")
      ->required();
  auto* runall_cmd = app.add_subcommand(
      "run-all", "run every experiment feasible under the configuration");
  auto* report_cmd = app.add_subcommand(
      "report", "like run-all, then emit a machine-readable report");
  auto* list_cmd = app.add_subcommand("list", "print the experiment catalog");
  for (auto* sub : {check_cmd, run_cmd, runall_cmd, report_cmd, list_cmd})
    add_options(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!o.config_path.empty()) load_config(o.config_path, o);
    if (given("--window")) apply_window(o.window, o.cfg);
    if (o.format != "json" && o.format != "csv" && o.format != "md")
      throw error("unknown format '" + o.format + "'");
    std::string v = config_violation(o.cfg);
    if (!v.empty()) {
      std::fprintf(stderr, "error: infeasible configuration: %s\n", v.c_str());
      return 2;
    }

    if (list_cmd->parsed()) {
      for (const auto& n : experiment_catalog()) std::printf("%s\n", n.c_str());
      return 0;
    }
    if (check_cmd->parsed()) {
      bool all = true;
      for (const auto& c : check_suites(o.cfg)) {
        std::printf("%-50s %s  (%s)\n", c.name.c_str(), c.pass ? "pass" : "FAIL",
                    c.detail.c_str());
        all = all && c.pass;
      }
      return all ? 0 : 1;
    }
    if (run_cmd->parsed()) {
      exp_report r = run_experiment(run_name, o.cfg);
      print_report(r);
      if (!o.out.empty()) {
        int rc = emit({r}, o);
        if (rc != 0) return rc;
      }
      return r.pass ? 0 : 1;
    }

    /* run-all and report share the sweep; report always emits */
    std::vector<exp_report> rs;
    bool all = true;
    for (const auto& name : selected(o)) {
      std::string pv = config_violation(o.cfg, name);
      if (!pv.empty()) {
        std::fprintf(stderr, "skipping %s: %s\n", name.c_str(), pv.c_str());
        continue;
      }
      rs.push_back(run_experiment(name, o.cfg));
      if (runall_cmd->parsed()) print_report(rs.back());
      all = all && rs.back().pass;
    }
    if (report_cmd->parsed() || !o.out.empty()) {
      int rc = emit(rs, o);
      if (rc != 0) return rc;
    }
    return all ? 0 : 1;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
