// analyze: command-line analysis of collected response records.
//
//   analyze report --store PATH [--format markdown|structured]
//   analyze simulate --n N --p-pos X --p-neg Y --seed S --out PATH
//   analyze allais
//   analyze validate-bank
//   analyze export --store PATH --out-dir DIR
//
// Exit codes: 0 success, 2 validation failure, 1 I/O error.

#include "framing/analysis.hpp"
#include "framing/error.hpp"
#include "framing/record_store.hpp"
#include "framing/simulation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

int exit_code(const framing::Error& e) {
  switch (e.kind()) {
    case framing::ErrorKind::persistence: return kExitIo;
    default: return kExitInvalid;
  }
}

framing::RecordStore open_existing(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    framing::fail(framing::ErrorKind::persistence, path + ": no such store");
  }
  return framing::RecordStore(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Framing-effect questionnaire analysis"};
  app.require_subcommand(1);

  std::string store_path;
  std::string format = "markdown";
  auto* report = app.add_subcommand("report", "Per-question framing tests, reflection summary, demographics");
  report->add_option("--store", store_path, "Record store file")->required();
  report->add_option("--format", format, "Output format")->check(CLI::IsMember({"markdown", "structured"}));

  std::size_t n = 0;
  framing::simulation::AgentPolicy policy;
  std::string out_path;
  auto* simulate = app.add_subcommand("simulate", "Generate a seeded synthetic cohort into a store");
  simulate->add_option("--n", n, "Sessions per version")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--p-pos", policy.p_risky_positive, "P(risky) under positive framing")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--p-neg", policy.p_risky_negative, "P(risky) under negative framing")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", policy.seed, "Generator seed")->required();
  simulate->add_option("--out", out_path, "Record store file to append to")->required();

  auto* allais = app.add_subcommand("allais", "Expected values and verdicts for the Allais gambles");
  auto* validate_bank = app.add_subcommand("validate-bank", "Check expected-value equality of the question bank");

  std::string out_dir;
  auto* export_cmd = app.add_subcommand("export", "Write answers_v1.jsonl and answers_v2.jsonl");
  export_cmd->add_option("--store", store_path, "Record store file")->required();
  export_cmd->add_option("--out-dir", out_dir, "Destination directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*report) {
      auto store = open_existing(store_path);
      auto v1 = store.load(1);
      auto v2 = store.load(2);
      auto rep = framing::analysis::build_report(v1, v2);
      if (format == "structured") {
        std::cout << framing::analysis::to_json(rep).dump(2) << "\n";
      } else {
        std::cout << framing::analysis::render_markdown(rep);
      }
    } else if (*simulate) {
      auto cohort = framing::simulation::simulate(n, policy);
      framing::RecordStore store(out_path);
      std::size_t before = store.size();
      for (const auto* records : {&cohort.v1, &cohort.v2}) {
        for (const auto& r : *records) store.append(r);
      }
      std::size_t added = store.size() - before;
      std::cout << "simulated " << cohort.v1.size() << " version 1 and " << cohort.v2.size()
                << " version 2 sessions; " << added << " new records in " << out_path;
      if (added < cohort.v1.size() + cohort.v2.size()) std::cout << " (the rest were already stored)";
      std::cout << "\n";
    } else if (*allais) {
      std::cout << framing::analysis::render_text(framing::analysis::allais_demo());
    } else if (*validate_bank) {
      const auto& bank = framing::QuestionBank::embedded();
      bool ok = true;
      for (const auto& c : bank.validate()) {
        std::cout << "question " << c.id << ": ";
        if (!c.quantified) {
          std::cout << "qualitative (no expected-value check)\n";
        } else {
          std::cout << (c.ev_equal ? "expected values equal" : "expected values DIFFER") << "\n";
          ok = ok && c.ev_equal;
        }
      }
      std::cout << "checksum " << bank.checksum() << "\n";
      return ok ? kExitOk : kExitInvalid;
    } else if (*export_cmd) {
      auto store = open_existing(store_path);
      auto records = store.load();
      framing::write_document_schema(records, out_dir);
      std::cout << "exported " << records.size() << " records to " << out_dir << "\n";
    }
  } catch (const framing::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
