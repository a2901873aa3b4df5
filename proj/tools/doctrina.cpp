// Copyright 2026 The Doctrina Authors.
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


// Command-line front end over the C API.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "doctrina/doctrina.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int status;
  std::string message;
};

struct Owned {
  char* p = nullptr;
  ~Owned() { dct_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

void ok(dct_status s) {
  if (s != DCT_OK) throw Failure{static_cast<int>(s), dct_last_error()};
}

using DoctrineHandle = std::unique_ptr<dct_doctrine, decltype(&dct_doctrine_free)>;
using TheoryHandle = std::unique_ptr<dct_theory, decltype(&dct_theory_free)>;

struct Options {
  std::vector<std::string> argv;
  std::string file;
  std::string level = "primary";
  std::string kind = "exists";
  std::string check;
  std::string element;
  std::string sub;
  std::string query;
  std::string output;
  std::string json_path;
  std::string dot_path;
  std::vector<int> materialize;
  int bound = -1;
  unsigned long long budget = 0;
  bool witness = false;
};

class Run {
 public:
  explicit Run(const Options& o) : o_(o) {
    report_["command"] = o.argv;
    report_["inputs"] = Json::object();
    report_["options"] = {{"bound", o.bound}, {"budget", o.budget}};
    report_["reports"] = Json::array();
  }

  DoctrineHandle doctrine(const std::string& path) {
    hash(path);
    dct_doctrine* d = nullptr;
    ok(dct_doctrine_load(path.c_str(), o_.bound, &d));
    return DoctrineHandle(d, &dct_doctrine_free);
  }

  TheoryHandle theory(const std::string& path) {
    hash(path);
    dct_theory* t = nullptr;
    ok(dct_theory_load(path.c_str(), &t));
    return TheoryHandle(t, &dct_theory_free);
  }

  std::optional<std::string> selection(const std::string& path) {
    if (path.empty()) return std::nullopt;
    hash(path);
    std::ifstream in(path);
    if (!in) throw Failure{DCT_PARSE, "cannot open " + path};
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  void add(const Owned& text, bool keep_witness = true) {
    Json parsed = Json::parse(text.str());
    for (auto r : parsed["reports"]) {
      if (!keep_witness) r["details"].erase("witness");
      report_["reports"].push_back(r);
    }
  }

  void info(const dct_doctrine* d) {
    Owned s;
    ok(dct_doctrine_info(d, &s.p));
    report_["doctrine"] = Json::parse(s.str());
  }

  void dot(const Owned& text) const {
    if (o_.dot_path.empty() || text.p == nullptr) return;
    write(o_.dot_path, text.str());
  }

  void base_dot(const dct_doctrine* d) const {
    if (o_.dot_path.empty()) return;
    Owned s;
    ok(dct_doctrine_dot(d, &s.p));
    dot(s);
  }

  void output(const dct_doctrine* d) {
    Owned s;
    ok(dct_doctrine_to_json(d, &s.p));
    if (o_.output.empty()) throw Failure{DCT_USAGE, "-o is required"};
    write(o_.output, s.str() + "\n");
    report_["output"] = o_.output;
  }

  int finish(double ms) {
    bool verdict = true;
    for (const auto& r : report_["reports"]) verdict = verdict && r["pass"].get<bool>();
    report_["verdict"] = verdict;
    print();
    std::printf("verdict: %s (%.1f ms)\n", verdict ? "pass" : "fail", ms);
    if (!o_.json_path.empty()) {
      const std::string text = report_.dump(2) + "\n";
      if (o_.json_path == "-")
        std::fputs(text.c_str(), stdout);
      else
        write(o_.json_path, text);
    }
    return verdict ? 0 : 1;
  }

 private:
  void hash(const std::string& path) {
    Owned h;
    ok(dct_file_hash(path.c_str(), &h.p));
    report_["inputs"][path] = h.str();
  }

  static void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{DCT_USAGE, "cannot write " + path};
    out << text;
  }

  void print() const {
    if (report_.contains("doctrine")) {
      const Json& d = report_["doctrine"];
      std::printf("doctrine %s: %zu objects, %zu arrows, %zu elements\n", d["name"].get<std::string>().c_str(),
                  d["objects"].get<std::size_t>(), d["arrows"].get<std::size_t>(), d["elements"].get<std::size_t>());
    }
    for (const auto& r : report_["reports"]) {
      std::printf("%s: %s (checked %zu, skipped %zu)\n", r["check"].get<std::string>().c_str(),
                  r["pass"].get<bool>() ? "pass" : "FAIL", r["checked"].get<std::size_t>(),
                  r["skipped"].get<std::size_t>());
      if (r.contains("witness"))
        for (const auto& w : r["witness"])
          std::printf("  %s: %s\n", w["law"].get<std::string>().c_str(), w["witness"].dump().c_str());
      if (r.contains("details"))
        for (const auto& [k, v] : r["details"].items()) std::printf("  %s = %s\n", k.c_str(), v.dump().c_str());
    }
  }

  const Options& o_;
  Json report_;
};

int execute(const std::string& cmd, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Run run(o);
  if (cmd == "logic entail" || cmd == "logic doctrine") {
    TheoryHandle t = run.theory(o.file);
    if (cmd == "logic entail") {
      Owned r;
      ok(dct_entail(t.get(), o.query.c_str(), &r.p));
      run.add(r, o.witness);
    } else {
      if (o.materialize.size() != 2) throw Failure{DCT_USAGE, "--materialize takes <ctx_bound> <size_bound>"};
      dct_doctrine* raw = nullptr;
      ok(dct_materialize(t.get(), o.materialize[0], o.materialize[1], &raw));
      DoctrineHandle d(raw, &dct_doctrine_free);
      run.info(d.get());
      run.base_dot(d.get());
      run.output(d.get());
    }
  } else {
    DoctrineHandle d = run.doctrine(o.file);
    run.info(d.get());
    Owned r, dot;
    if (cmd == "validate") {
      ok(dct_validate(d.get(), o.level.c_str(), &r.p));
      run.base_dot(d.get());
    } else if (cmd == "complete") {
      dct_doctrine* raw = nullptr;
      ok(dct_complete(d.get(), o.kind.c_str(), &raw));
      DoctrineHandle c(raw, &dct_doctrine_free);
      ok(dct_validate(c.get(), o.level.c_str(), &r.p));
      run.base_dot(c.get());
      run.output(c.get());
    } else if (cmd == "pred") {
      ok(dct_pred(d.get(), &r.p, o.dot_path.empty() ? nullptr : &dot.p));
    } else if (cmd == "reg") {
      ok(dct_reg(d.get(), o.budget, &r.p, o.dot_path.empty() ? nullptr : &dot.p));
    } else if (cmd == "ex") {
      ok(dct_ex(d.get(), o.budget, &r.p, o.dot_path.empty() ? nullptr : &dot.p));
    } else if (cmd == "check") {
      ok(dct_check(d.get(), o.check.c_str(), o.element.empty() ? nullptr : o.element.c_str(), &r.p));
      run.base_dot(d.get());
    } else if (cmd == "thm main") {
      auto sel = run.selection(o.sub);
      ok(dct_thm_main(d.get(), sel ? sel->c_str() : nullptr, o.budget, &r.p));
      run.base_dot(d.get());
    }
    run.add(r);
    run.dot(dot);
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return run.finish(ms);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.argv.assign(argv, argv + argc);
  o.argv[0] = "doctrina";
  CLI::App app{"Finite doctrines, their completions and the rule of choice"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dct_version());

  auto common = [&](CLI::App* sub) {
    sub->add_option("--bound", o.bound, "Materialization bound for builder forms");
    sub->add_option("--budget", o.budget, "Candidate relations per hom set");
    sub->add_option("--json", o.json_path, "Write the run report as JSON ('-' for standard output)")
        ->expected(0, 1)
        ->default_str("-");
    sub->add_option("--emit-dot", o.dot_path, "Write the category as a graph description");
  };
  std::string cmd;
  auto file = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.file, what)->required();
    common(sub);
    sub->callback([&cmd, sub] {
      cmd = sub->get_parent() != nullptr && sub->get_parent()->get_parent() != nullptr
                ? sub->get_parent()->get_name() + " " + sub->get_name()
                : sub->get_name();
    });
  };

  auto* validate = app.add_subcommand("validate", "Check the doctrine laws at a level");
  file(validate, "Doctrine file");
  validate->add_option("--level", o.level)->check(CLI::IsMember({"primary", "elementary", "existential"}));

  auto* complete = app.add_subcommand("complete", "Build a completion and write it as a doctrine file");
  file(complete, "Doctrine file");
  complete->add_option("--kind", o.kind)->check(CLI::IsMember({"exists", "comprehension", "extensional", "pred"}));
  complete->add_option("--level", o.level, "Level to validate the result at")
      ->check(CLI::IsMember({"primary", "elementary", "existential"}));
  complete->add_option("-o,--output", o.output, "Output doctrine file")->required();

  file(app.add_subcommand("pred", "Build Pred with its checks"), "Doctrine file");
  file(app.add_subcommand("reg", "Build the regular completion with its checks"), "Doctrine file");
  file(app.add_subcommand("ex", "Build the exact completion with its checks"), "Doctrine file");

  auto* check = app.add_subcommand("check", "Rule of choice, covers, epsilon operators and splitting");
  check->add_option("check", o.check)->required()->check(CLI::IsMember({"rc", "cover", "epsilon", "splitting"}));
  file(check, "Doctrine file");
  check->add_option("--element", o.element, "Element A:i for splitting");

  auto* thm = app.add_subcommand("thm", "Theorem verifiers");
  thm->require_subcommand(1);
  auto* main_thm = thm->add_subcommand("main", "Cover, Reg and Ex equivalences for a subdoctrine");
  file(main_thm, "Doctrine file");
  main_thm->add_option("--sub", o.sub, "Selection file");

  auto* logic = app.add_subcommand("logic", "Regular logic over a relational signature");
  logic->require_subcommand(1);
  auto* entail = logic->add_subcommand("entail", "Decide a sequent in the empty theory");
  file(entail, "Theory file");
  entail->add_option("-q,--query", o.query, "<ctx> | phi |- psi")->required();
  entail->add_flag("--witness", o.witness, "Print the witness substitution");
  auto* materialize = logic->add_subcommand("doctrine", "Tabulate the syntactic doctrine");
  file(materialize, "Theory file");
  materialize->add_option("--materialize", o.materialize, "<ctx_bound> <size_bound>")->expected(2)->required();
  materialize->add_option("-o,--output", o.output, "Output doctrine file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return execute(cmd, o);
  } catch (const Failure& f) {
    std::fprintf(stderr, "doctrina: %s\n", f.message.c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "doctrina: %s\n", e.what());
    return 2;
  }
}
