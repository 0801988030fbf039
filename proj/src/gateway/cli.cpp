#include "plainloop/gateway/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <thread>

#include "plainloop/adaptation/consolidate.hpp"
#include "plainloop/adaptation/preferences.hpp"
#include "plainloop/adaptation/recalibrate.hpp"
#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"
#include "plainloop/gateway/api.hpp"
#include "plainloop/gateway/batch.hpp"
#include "plainloop/gateway/config.hpp"
#include "plainloop/gateway/scenario.hpp"
#include "plainloop/gateway/server.hpp"
#include "plainloop/metrics/snapshot.hpp"
#include "plainloop/ruledsl/evaluate.hpp"
#include "plainloop/ruledsl/lint.hpp"
#include "plainloop/ruledsl/parse.hpp"
#include "plainloop/ruledsl/thresholds.hpp"
#include "plainloop/workflow/policy_store.hpp"

namespace plainloop::gateway {

using nlohmann::json;

namespace {

std::string default_thresholds() { return std::string(PLAINLOOP_DATA_DIR) + "/thresholds.conf"; }

bool internal_failure(ErrorCode code) {
  return code == ErrorCode::StorageFailure || code == ErrorCode::ProviderUnavailable;
}

std::map<std::string, double> parse_bindings(const std::vector<std::string>& binds) {
  std::map<std::string, double> out;
  for (const auto& bind : binds) {
    const auto eq = bind.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidInput, "binding must be key=value: " + bind);
    const auto value = trim(bind.substr(eq + 1));
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      out[trim(bind.substr(0, eq))] = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidInput, "binding value is not a number: " + bind);
    }
  }
  return out;
}

std::vector<adaptation::DecisionRecord> decisions_in(const std::string& log_path) {
  return adaptation::decisions_from_log(audit::verify_text(read_file(log_path)));
}

std::sig_atomic_t volatile g_stop = 0;

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"plainloop: accessible text generation with human oversight"};
  app.require_subcommand(1);
  std::function<int()> action;

  // run
  BatchOptions batch;
  auto* run = app.add_subcommand("run", "Batch pipeline over a JSON-lines file, no server");
  run->add_option("--input", batch.input, "Submissions, one JSON object per line")->required();
  run->add_option("--rules", batch.rules, "Rule file (.eca)");
  run->add_option("--thresholds", batch.thresholds, "Threshold table");
  run->add_option("--out", batch.out, "Results file")->required();
  run->add_option("--config", batch.config, "Service configuration");
  run->add_option("--audit", batch.audit, "Write the audit log to this file");
  run->callback([&] {
    action = [&] {
      const auto summary = run_batch(batch);
      out << "processed " << summary.processed << ", failed " << summary.failed << "\n";
      return summary.failed ? kExitValidation : kExitOk;
    };
  });

  // rule lint | eval
  auto* rule = app.add_subcommand("rule", "Rule files");
  rule->require_subcommand(1);
  std::string rule_file;
  std::string thresholds_file = default_thresholds();
  std::vector<std::string> known;
  auto* lint_cmd = rule->add_subcommand("lint", "Check a rule file against the known metric keys");
  lint_cmd->add_option("file", rule_file)->required();
  lint_cmd->add_option("--thresholds", thresholds_file, "Threshold table declaring symbols");
  lint_cmd->add_option("--known", known, "Extra keys to accept");
  lint_cmd->callback([&] {
    action = [&] {
      const auto rules = ruledsl::load_rules(rule_file);
      ruledsl::LintContext context;
      context.known_keys = metrics::computed_metric_keys();
      context.external_keys = metrics::external_metric_keys();
      for (const auto& k : known) context.known_keys.insert(utf8::to_lower(k));
      context.symbols = ruledsl::ThresholdTable::load(thresholds_file).symbols();
      const auto diagnostics = ruledsl::lint(rules, context);
      for (const auto& d : diagnostics) out << rule_file << ": " << ruledsl::format_diagnostic(d) << "\n";
      if (ruledsl::has_warnings(diagnostics)) return kExitValidation;
      out << rule_file << ": " << rules.rules.size() << " rules OK\n";
      return kExitOk;
    };
  });

  std::vector<std::string> binds;
  std::string profile = "*";
  std::string domain = "*";
  std::string missing = "escalate";
  auto* eval_cmd = rule->add_subcommand("eval", "Evaluate a rule file against bound metric values");
  eval_cmd->add_option("file", rule_file)->required();
  eval_cmd->add_option("--bind", binds, "key=value, repeatable");
  eval_cmd->add_option("--thresholds", thresholds_file, "Threshold table");
  eval_cmd->add_option("--profile", profile, "Reader profile for threshold lookup");
  eval_cmd->add_option("--domain", domain, "Domain for threshold lookup");
  eval_cmd->add_option("--missing-data", missing, "escalate | ignore")->check(CLI::IsMember({"escalate", "ignore"}));
  eval_cmd->callback([&] {
    action = [&] {
      const auto rules = ruledsl::load_rules(rule_file);
      const auto table = ruledsl::ThresholdTable::load(thresholds_file);
      ruledsl::EvaluateOptions options;
      options.missing_data =
          missing == "ignore" ? ruledsl::MissingDataPolicy::Ignore : ruledsl::MissingDataPolicy::Escalate;
      const auto outcome =
          ruledsl::evaluate(ruledsl::resolve(rules, table, profile, domain), parse_bindings(binds), options);
      for (const auto& t : outcome.trace) {
        out << t.rule_id << " ";
        switch (t.status) {
          case ruledsl::RuleStatus::Fired: {
            const auto it = std::find_if(outcome.fired.begin(), outcome.fired.end(),
                                         [&](const ruledsl::FiredRule& f) { return f.rule_id == t.rule_id; });
            out << "FIRED \xE2\x86\x92 " << it->action.text();
            break;
          }
          case ruledsl::RuleStatus::NotFired: out << "NOT FIRED"; break;
          case ruledsl::RuleStatus::Indeterminate: {
            out << "INDETERMINATE (missing";
            for (const auto& m : t.missing) out << " " << m;
            out << ")";
            break;
          }
        }
        out << "\n";
      }
      return kExitOk;
    };
  });

  // audit verify | export
  auto* audit_cmd = app.add_subcommand("audit", "Audit log files");
  audit_cmd->require_subcommand(1);
  std::string log_file;
  auto* verify_cmd = audit_cmd->add_subcommand("verify", "Check the hash chain and canonical form");
  verify_cmd->add_option("file", log_file)->required();
  verify_cmd->callback([&] {
    action = [&] {
      try {
        const auto events = audit::verify_text(read_file(log_file));
        out << "OK " << events.size() << " events";
        if (!events.empty()) out << ", head " << events.back().hash;
        out << "\n";
        return kExitOk;
      } catch (const LogError& e) {
        err << log_file << ": corrupt at seq " << e.seq() << ": " << e.what() << "\n";
        return kExitValidation;
      }
    };
  });
  std::uint64_t from = 1;
  std::uint64_t to = 0;
  std::string role = "auditor";
  auto* export_cmd = audit_cmd->add_subcommand("export", "Role-filtered JSON lines for a seq range");
  export_cmd->add_option("file", log_file)->required();
  export_cmd->add_option("--from", from, "First seq");
  export_cmd->add_option("--to", to, "Last seq, default the end of the log");
  export_cmd->add_option("--role", role, "auditor | operator | public")
      ->check(CLI::IsMember({"auditor", "operator", "public"}));
  export_cmd->callback([&] {
    action = [&] {
      audit::AuditLog log(std::make_shared<audit::FileStore>(log_file), "");
      out << log.export_range(from, to == 0 ? log.next_seq() - 1 : to, audit::parse_export_role(role));
      return kExitOk;
    };
  });

  // kpi report
  auto* kpi_cmd = app.add_subcommand("kpi", "Key performance indicators");
  kpi_cmd->require_subcommand(1);
  std::string signals_file;
  std::string config_file = default_config_path();
  std::vector<std::string> profiles;
  auto* report_cmd = kpi_cmd->add_subcommand("report", "KPI records per profile from reader signals");
  report_cmd->add_option("--signals", signals_file, "Signals, JSON lines")->required();
  report_cmd->add_option("--config", config_file, "Service configuration");
  report_cmd->add_option("--profile", profiles, "Restrict to these profiles");
  report_cmd->callback([&] {
    action = [&] {
      const auto config = ServiceConfig::load(config_file);
      const auto kpi_config = kpi::KpiConfig::from_config(config.values);
      const auto signals = kpi::UserSignals::load(signals_file);
      const auto selected =
          profiles.empty() ? signal_profiles(signals) : std::set<std::string>(profiles.begin(), profiles.end());
      out << kpi_report(signals, kpi_config, selected, workflow::utc_now()).dump(2) << "\n";
      return kExitOk;
    };
  });

  // scenario appendix-a
  auto* scenario_cmd = app.add_subcommand("scenario", "Built-in end-to-end fixtures");
  scenario_cmd->require_subcommand(1);
  bool as_json = false;
  std::string data_dir = PLAINLOOP_DATA_DIR;
  auto* appendix_cmd = scenario_cmd->add_subcommand("appendix-a", "The papeleos / trámites worked example");
  appendix_cmd->add_flag("--json", as_json, "Print the report as JSON");
  appendix_cmd->add_option("--data", data_dir, "Data directory");
  appendix_cmd->callback([&] {
    action = [&] {
      const auto report = run_appendix_a(data_dir);
      const bool ok = report.final_state == "Delivered" && report.routing_kind == "Escalate" &&
                      report.approve_rejection == ErrorCode::NonCompliantChecklist && report.audit_verified &&
                      report.replay_matches;
      if (as_json) {
        json pairs = json::array();
        for (const auto& p : report.preference_pairs) pairs.push_back(p.to_json());
        json candidates = json::array();
        for (const auto& g : report.glossary_candidates) candidates.push_back(g.to_json());
        out << json{{"trace", report.trace},          {"routing", report.routing_kind},
                    {"reasons", report.reasons},      {"final_state", report.final_state},
                    {"preference_pairs", pairs},      {"glossary_candidates", candidates},
                    {"audit_verified", report.audit_verified}, {"replay_matches", report.replay_matches}}
                   .dump(2)
            << "\n";
      } else {
        for (const auto& line : report.trace) out << line << "\n";
      }
      return ok ? kExitOk : kExitValidation;
    };
  });

  // adapt consolidate | preferences | recalibrate
  auto* adapt_cmd = app.add_subcommand("adapt", "Adaptation exports from an audit log");
  adapt_cmd->require_subcommand(1);
  std::size_t repetitions = 2;
  auto* consolidate_cmd = adapt_cmd->add_subcommand("consolidate", "Propose glossary and prompt updates");
  consolidate_cmd->add_option("log", log_file)->required();
  consolidate_cmd->add_option("--config", config_file, "Service configuration with the current policy");
  consolidate_cmd->add_option("--min-repetitions", repetitions, "Distinct items before an edit is promoted")
      ->check(CLI::PositiveNumber);
  consolidate_cmd->callback([&] {
    action = [&] {
      const auto config = ServiceConfig::load(config_file);
      const auto policy = workflow::PolicyBundle::from_config(config.values, config.base_dir);
      adaptation::ConsolidateOptions options;
      options.min_repetitions = repetitions;
      out << adaptation::consolidate(decisions_in(log_file), policy, options).to_json().dump(2) << "\n";
      return kExitOk;
    };
  });
  std::string pairs_out;
  auto* preferences_cmd = adapt_cmd->add_subcommand("preferences", "Export preference pairs as JSON lines");
  preferences_cmd->add_option("log", log_file)->required();
  preferences_cmd->add_option("--out", pairs_out, "Output file")->required();
  preferences_cmd->callback([&] {
    action = [&] {
      const auto exported = adaptation::export_preferences(decisions_in(log_file));
      write_file(pairs_out, adaptation::preferences_jsonl(exported.pairs));
      out << exported.pairs.size() << " pairs, " << exported.skipped_redacted.size() << " redacted skipped\n";
      return kExitOk;
    };
  });
  auto* recalibrate_cmd = adapt_cmd->add_subcommand("recalibrate", "Propose theta_profile from reader signals");
  recalibrate_cmd->add_option("--signals", signals_file, "Signals, JSON lines")->required();
  recalibrate_cmd->add_option("--config", config_file, "Service configuration");
  recalibrate_cmd->callback([&] {
    action = [&] {
      const auto config = ServiceConfig::load(config_file);
      const auto policy = workflow::PolicyBundle::from_config(config.values, config.base_dir);
      json proposals = json::array();
      for (const auto& p : adaptation::recalibrate(kpi::UserSignals::load(signals_file), policy)) {
        proposals.push_back(p.to_json());
      }
      out << proposals.dump(2) << "\n";
      return kExitOk;
    };
  });

  // serve
  std::string listen;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP API");
  serve_cmd->add_option("--config", config_file, "Service configuration ($PLAINLOOP_CONFIG)");
  serve_cmd->add_option("--listen", listen, "host:port ($PLAINLOOP_LISTEN)");
  serve_cmd->callback([&] {
    action = [&] {
      const auto config = ServiceConfig::load(config_file);
      auto service = build_service(config);
      const auto tokens = TokenTable::from_config(config.values);
      if (tokens.size() == 0) err << "warning: no auth.* tokens configured; every request will get 401\n";
      ApiRouter router(*service.pipeline, tokens, service.signals);
      HttpServer server(router);
      const auto address = listen.empty() ? default_listen() : parse_listen(listen);
      const int port = server.bind(address.host, address.port);
      out << "listening on " << address.host << ":" << port << std::endl;
      g_stop = 0;
      std::signal(SIGINT, [](int) { g_stop = 1; });
      std::signal(SIGTERM, [](int) { g_stop = 1; });
      std::thread watcher([&] {
        while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
      });
      server.listen();
      g_stop = 1;
      watcher.join();
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  try {
    return action ? action() : kExitValidation;
  } catch (const SyntaxError& e) {
    err << rule_file << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return internal_failure(e.code()) ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace plainloop::gateway
