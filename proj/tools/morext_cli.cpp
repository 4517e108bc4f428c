// Command-line front end: classify, transport, demo counterexample, catalog.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "morext/morext.hpp"

namespace {

using namespace morext;

constexpr int kExitInvariance = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// FILE, or catalog:NAME for a built-in entry.
AnyExtension load_extension(const std::string& source) {
  const std::string prefix = "catalog:";
  if (source.rfind(prefix, 0) == 0) return catalog_entry(source.substr(prefix.size())).extension;
  return parse_extension(read_file(source));
}

ClassifyOptions options_from_env() {
  ClassifyOptions opt;
  if (const char* s = std::getenv("MOREXT_SEED")) {
    try {
      opt.seed = std::stoull(s, nullptr, 0);
    } catch (const std::exception&) {
      throw ParseError("MOREXT_SEED", "expected an unsigned integer");
    }
  }
  return opt;
}

std::vector<std::string> split_classes(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    bool known = false;
    for (const auto& c : class_names()) known = known || c == item;
    if (!known) throw ParseError("--classes", "unknown class " + item);
    out.push_back(item);
  }
  return out;
}

int run_classify(const std::string& file, const std::string& classes, bool json, bool timing) {
  auto ext = load_extension(file);
  auto opt = options_from_env();
  opt.classes = split_classes(classes);
  return std::visit(
      [&](const auto& e) {
        auto rep = classify(*e, opt);
        if (json)
          std::cout << class_report_json(e->field(), rep).dump(2) << "\n";
        else
          std::cout << class_report_text(e->field(), rep);
        if (timing)
          for (const auto& [name, secs] : rep.timing) std::cerr << "time " << name << " " << secs << " s\n";
        return 0;
      },
      ext);
}

int run_transport(const std::string& file, std::size_t free_rank, const std::string& idem_file, bool verify,
                  bool json) {
  auto ext = load_extension(file);
  auto opt = options_from_env();
  return std::visit(
      [&](const auto& e) {
        using F = std::decay_t<decltype(e->field())>;
        std::optional<Progenerator<F>> n;
        std::string description;
        if (!idem_file.empty()) {
          auto spec = parse_idempotent(*e, read_file(idem_file));
          n = progenerator_from_idempotent(e->b().induced(), spec.k, spec.entries);
          if (!n) throw ParseError(idem_file, "idempotent is not full: no generator system exists");
          description = "idempotent (k = " + std::to_string(spec.k) + ")";
        } else {
          n = progenerator_free(e->b().induced(), free_rank);
          description = "free rank " + std::to_string(free_rank);
        }
        auto rep = transport_report(e, std::move(*n), description, opt);
        if (json)
          std::cout << transport_report_json(e->field(), rep).dump(2) << "\n";
        else
          std::cout << transport_report_text(e->field(), rep);
        if (!rep.checks_ok()) {
          std::cerr << "internal: an invariance check failed\n";
          return kExitInternal;
        }
        return verify && !rep.invariance_ok() ? kExitInvariance : 0;
      },
      ext);
}

int run_demo(std::uint32_t p) {
  auto demo = counterexample_demo(p);
  std::cout << "base F_" << p << "[t]/(t^" << 2 * p << ") over span{1, t^" << p << "}: P_" << p << " "
            << power_outcome_name(demo.base) << " (" << demo.base_method << ")\n";
  std::cout << "transported M_2(A)/M_2(B): P_" << p << " " << power_outcome_name(demo.transported) << "\n";
  std::cout << "witness w = [[1, t], [0, 0]], A' coordinates [";
  for (std::size_t i = 0; i < demo.witness.size(); ++i) std::cout << (i ? ", " : "") << demo.witness[i];
  std::cout << "]\n";
  for (std::size_t n = 0; n < demo.idempotent_outside.size(); ++n)
    std::cout << "  n = " << n + 1 << ": w^n = w, not in B' " << (demo.idempotent_outside[n] ? "yes" : "NO") << "\n";
  std::cout << (demo.reproduced() ? "the power property is not Morita invariant\n" : "counterexample NOT reproduced\n");
  return demo.reproduced() ? 0 : kExitInternal;
}

int run_catalog(const std::string& name, bool emit, bool emit_idempotent) {
  if (name.empty()) {
    if (emit) {
      Json all = Json::object();
      for (const auto& e : catalog()) all[e.name] = extension_json(e.extension);
      std::cout << all.dump(2) << "\n";
      return 0;
    }
    for (const auto& e : catalog()) std::cout << detail::pad(e.name, 16) << e.description << "\n";
    return 0;
  }
  auto e = catalog_entry(name);
  if (emit_idempotent) {
    std::visit(
        [&](const auto& ext) {
          using F = std::decay_t<decltype(ext->field())>;
          std::cout << idempotent_json(ext->field(), std::get<IdempotentSpec<F>>(e.idempotent)).dump(2) << "\n";
        },
        e.extension);
    return 0;
  }
  if (emit) {
    std::cout << extension_json(e.extension).dump(2) << "\n";
    return 0;
  }
  std::visit(
      [&](const auto& ext) {
        std::cout << e.name << ": " << e.description << "\n";
        std::cout << "  field " << ext->field().spec().name() << ", dim A = " << ext->dim()
                  << ", dim B = " << ext->b().dim() << "\n";
      },
      e.extension);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classification of finite-dimensional ring extensions and their Morita transports"};
  app.require_subcommand(1);

  std::string file, classes, idem_file, name;
  bool json = false, timing = false, verify = false, emit = false, emit_idem = false;
  std::size_t free_rank = 0;
  std::uint32_t p = 2;

  auto* classify_cmd = app.add_subcommand("classify", "run every class check on an extension");
  classify_cmd->add_option("FILE", file, "extension document, or catalog:NAME")->required();
  classify_cmd->add_option("--classes", classes, "comma-separated subset of classes");
  classify_cmd->add_flag("--json", json, "machine-readable report");
  classify_cmd->add_flag("--timing", timing, "per-check timing on stderr");

  auto* transport_cmd = app.add_subcommand("transport", "build A'/B' and transport certificates");
  transport_cmd->add_option("FILE", file, "extension document, or catalog:NAME")->required();
  auto* free_opt = transport_cmd->add_option("--free", free_rank, "free progenerator B^N")->check(CLI::PositiveNumber);
  auto* idem_opt = transport_cmd->add_option("--idempotent", idem_file, "idempotent progenerator document");
  free_opt->excludes(idem_opt);
  transport_cmd->add_flag("--verify-invariance", verify, "exit 1 if a transported certificate fails");
  transport_cmd->add_flag("--json", json, "machine-readable report");

  auto* demo_cmd = app.add_subcommand("demo", "worked examples");
  demo_cmd->require_subcommand(1);
  auto* counter_cmd = demo_cmd->add_subcommand("counterexample", "the power property is not Morita invariant");
  counter_cmd->add_option("--p", p, "prime")->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "list or emit built-in extensions");
  catalog_cmd->add_option("NAME", name, "catalog entry");
  catalog_cmd->add_flag("--emit", emit, "print the extension document");
  catalog_cmd->add_flag("--emit-idempotent", emit_idem, "print the default idempotent document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(file, classes, json, timing);
    if (transport_cmd->parsed()) {
      if (free_opt->count() == 0 && idem_opt->count() == 0) {
        std::cerr << "transport needs --free N or --idempotent FILE\n";
        return kExitInput;
      }
      return run_transport(file, free_rank, idem_file, verify, json);
    }
    if (counter_cmd->parsed()) {
      if (!is_prime(p)) {
        std::cerr << "--p must be prime\n";
        return kExitInput;
      }
      return run_demo(p);
    }
    if (catalog_cmd->parsed()) return run_catalog(name, emit, emit_idem);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const UnknownCatalogEntry& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
