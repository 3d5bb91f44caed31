// Copyright 2026 The nilcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nilcert/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "nilcert/checker.hpp"
#include "nilcert/commutativity.hpp"
#include "nilcert/expr.hpp"
#include "nilcert/serialize.hpp"
#include "nilcert/transforms.hpp"

namespace nilcert {

namespace {

// Exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit 1.
class InputRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MalformedInput& e) {
    err << "malformed certificate: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidPermutation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const TransformError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InputRejected& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << bytes;
  out.close();
  if (!out) throw IoError("cannot write " + path);
}

Certificate load_certificate(const std::string& path) {
  std::string bytes = read_file(path);
  try {
    return deserialize(bytes);
  } catch (const MalformedInput& e) {
    throw MalformedInput(path + ": " + e.what(), e.offset(), e.pointer());
  }
}

WitnessDag load_valid(const std::string& path, const CliConfig& config) {
  Certificate cert = load_certificate(path);
  Verdict verdict = check_certificate(cert);
  if (!verdict) throw InputRejected(path + ": " + verdict.describe());
  return to_witness(cert, config.max_nodes);
}

std::string summary(const std::string& path, const Certificate& cert) {
  return path + ": " + std::string(to_string(cert.setting)) + ", " +
         std::to_string(cert.nodes.size()) + " nodes, claim " +
         print_poly(cert.claim, cert.symbol_order());
}

// Every certificate leaves the process only after the checker has replayed
// both the in-memory bytes and the bytes that landed on disk.
void write_checked(const std::string& path, const std::string& bytes) {
  Verdict verdict = check_certificate(deserialize(bytes));
  if (!verdict) throw std::logic_error("refusing to write " + path + ": " + verdict.describe());
  write_file(path, bytes);
  if (read_file(path) != bytes) throw IoError(path + " did not read back identically");
}

void write_certificate(const std::string& path, const Certificate& cert, std::ostream& out) {
  write_checked(path, serialize(cert));
  out << summary(path, cert) << "\n";
}

std::vector<std::string> merge_symbols(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const std::string& s : b) {
    if (std::ranges::find(out, s) == out.end()) out.push_back(s);
  }
  return out;
}

void require_setting(std::optional<Setting> want, const WitnessDag& p, const WitnessDag& q) {
  if (p.setting() != q.setting()) {
    throw SettingMismatch("the two certificates are in different settings (" +
                          std::string(to_string(p.setting())) + ", " +
                          std::string(to_string(q.setting())) + ")");
  }
  if (want && *want != p.setting()) {
    throw SettingMismatch("--setting " + std::string(to_string(*want)) +
                          " but the certificates are " + std::string(to_string(p.setting())));
  }
}

Permutation parse_sigma(const std::string& text) {
  std::vector<std::size_t> image;
  for (const std::string& item : split_top_level(text, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("--sigma: '" + item + "' is not a positive integer");
    }
    image.push_back(v);
  }
  if (image.empty()) throw UsageError("--sigma is empty");
  return Permutation(std::move(image));
}

std::string log_path_for(const std::string& out_path) {
  const std::string ext = ".json";
  if (out_path.size() > ext.size() && out_path.ends_with(ext)) {
    return out_path.substr(0, out_path.size() - ext.size()) + ".md";
  }
  return out_path + ".md";
}

}  // namespace

CliConfig config_from_env() {
  CliConfig config;
  const char* raw = std::getenv("NILCERT_MAX_NODES");
  if (raw == nullptr) return config;
  std::string_view text(raw);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
    throw std::invalid_argument("NILCERT_MAX_NODES must be a positive integer, got '" +
                                std::string(text) + "'");
  }
  config.max_nodes = v;
  return config;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Certificate cert = load_certificate(path);
    Verdict verdict = check_certificate(cert);
    if (!verdict) {
      err << path << ": " << verdict.describe() << "\n";
      return kExitInvalid;
    }
    out << summary(path, cert) << ": valid\n";
    return kExitOk;
  });
}

int cmd_demo(const std::string& name, const std::string& out_path,
             const std::optional<std::string>& log_path, const CliConfig& config, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    int n = 0;
    if (name == "x2") {
      n = 2;
    } else if (name == "x3") {
      n = 3;
    } else {
      throw UsageError("unknown demo '" + name + "'; supported: x2, x3");
    }
    Demo demo = xn_demo(n, TransformOptions{config.max_nodes});
    if (!certified_steps_valid(demo.log)) {
      throw std::logic_error("demo proof log refers to an invalid certificate");
    }
    write_certificate(out_path, demo.certificate, out);
    std::string log = log_path.value_or(log_path_for(out_path));
    write_file(log, render_proof_log(demo.log, LogStyle::Markdown));
    out << log << ": proof log, " << demo.log.steps.size() << " steps\n";
    return kExitOk;
  });
}

int cmd_product(std::optional<Setting> setting, const std::string& problem_path,
                const std::string& p_path, const std::string& q_path,
                const std::optional<std::string>& m_expr, const std::string& out_path,
                const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemFile problem = parse_problem(read_file(problem_path));
    if (!problem.a || !problem.b) {
      throw UsageError(problem_path + ": the product needs both 'a' and 'b'");
    }
    if (m_expr && problem.setting == Setting::Nil) {
      throw UsageError("--m only applies to the sqrt setting");
    }
    WitnessDag p = load_valid(p_path, config);
    WitnessDag q = load_valid(q_path, config);
    require_setting(setting, p, q);
    if (p.setting() != problem.setting) {
      throw SettingMismatch(problem_path + " is " + std::string(to_string(problem.setting)) +
                            " but the certificates are " + std::string(to_string(p.setting())));
    }

    GeneratorSplit split;
    split.common.elements = problem.generators;
    for (const ProblemFamily& f : problem.families) split.common.families.push_back({f.left, f.right});
    split.a = *problem.a;
    split.b = *problem.b;

    TransformOptions opts{config.max_nodes};
    WitnessDag result = [&] {
      if (problem.setting == Setting::Nil) return nil_product(split, p, q, opts);
      // Fresh only after both inputs are loaded, so it avoids their symbols.
      Poly m = m_expr ? parse_poly(*m_expr, problem.symbols) : Poly(Symbol::fresh());
      return sqrt_product(split, p, q, m, opts);
    }();
    write_certificate(out_path, to_certificate(result, problem.symbols), out);
    return kExitOk;
  });
}

int cmd_permute(const std::string& cert_path, const std::string& factors, const std::string& sigma,
                const std::string& out_path, const CliConfig& config, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    Permutation perm = parse_sigma(sigma);
    Certificate cert = load_certificate(cert_path);
    Verdict verdict = check_certificate(cert);
    if (!verdict) throw InputRejected(cert_path + ": " + verdict.describe());
    std::vector<Poly> parts;
    for (const std::string& f : split_top_level(factors, ';')) {
      parts.push_back(parse_poly(f, cert.symbols));
    }
    if (parts.size() != perm.size()) {
      throw UsageError("--factors has " + std::to_string(parts.size()) + " entries but --sigma has " +
                       std::to_string(perm.size()));
    }
    WitnessDag w = to_witness(cert, config.max_nodes);
    WitnessDag result = permute(w, parts, perm, TransformOptions{config.max_nodes});
    if (perm.is_identity()) {
      // Nothing to rewrite: hand back the input bytes untouched.
      write_checked(out_path, read_file(cert_path));
      out << summary(out_path, cert) << "\n";
      return kExitOk;
    }
    write_certificate(out_path, to_certificate(result, cert.symbols), out);
    return kExitOk;
  });
}

int cmd_intersect(std::optional<Setting> setting, const std::string& p_path,
                  const std::string& q_path, const std::string& out_path, const CliConfig& config,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Certificate pc = load_certificate(p_path);
    Certificate qc = load_certificate(q_path);
    WitnessDag p = load_valid(p_path, config);
    WitnessDag q = load_valid(q_path, config);
    require_setting(setting, p, q);
    GeneratorSplit split = infer_split(p.generators(), q.generators());
    TransformOptions opts{config.max_nodes};
    WitnessDag result = p.setting() == Setting::Nil ? nil_intersect(split, p, q, opts)
                                                    : sqrt_intersect(split, p, q, opts);
    write_certificate(out_path, to_certificate(result, merge_symbols(pc.symbols, qc.symbols)), out);
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for membership in reduced and semiprime ideals", "nilcert"};
  app.require_subcommand(1);

  std::string path, name, out_path, problem, p_path, q_path, factors, sigma, m_expr, log_path;
  std::optional<Setting> setting;
  std::string setting_value;

  auto* check = app.add_subcommand("check", "Validate a certificate");
  check->add_option("certificate", path, "Certificate file")->required();

  auto* demo = app.add_subcommand("demo", "Certify [x,y] in Nil(x^n - x) for n = 2 or 3");
  demo->add_option("name", name, "x2 or x3")->required();
  demo->add_option("-o,--out", out_path, "Certificate output")->required();
  demo->add_option("--log", log_path, "Markdown proof log (default: next to the certificate)");

  auto add_setting = [&](CLI::App* sub) {
    return sub->add_option("--setting", setting_value, "nil or sqrt")
        ->check(CLI::IsMember({"nil", "sqrt"}));
  };

  auto* product = app.add_subcommand("product", "x in I(U,a), y in I(U,b) => x*y or x*m*y in I(U,ab)");
  auto* product_setting = add_setting(product);
  product->add_option("problem", problem, "Problem file giving U, a and b")->required();
  product->add_option("p", p_path, "Certificate over U + a")->required();
  product->add_option("q", q_path, "Certificate over U + b")->required();
  product->add_option("--m", m_expr, "Middle element (sqrt only; default a fresh symbol)");
  product->add_option("-o,--out", out_path, "Certificate output")->required();

  auto* perm = app.add_subcommand("permute", "Reorder the factors of a witnessed product");
  perm->add_option("certificate", path, "Input certificate")->required();
  perm->add_option("--factors", factors, "Factors e1;e2;...")->required();
  perm->add_option("--sigma", sigma, "Images i1,i2,... of 1..n")->required();
  perm->add_option("-o,--out", out_path, "Certificate output")->required();

  auto* inter = app.add_subcommand("intersect", "c in I(U,a), c in I(U,b) => c in I(U,ab)");
  auto* inter_setting = add_setting(inter);
  inter->add_option("p", p_path, "Certificate over U + a")->required();
  inter->add_option("q", q_path, "Certificate over U + b")->required();
  inter->add_option("-o,--out", out_path, "Certificate output")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (demo->parsed() && !name.empty()) err << "supported demos: x2, x3\n";
    return kExitUsage;
  }

  CliConfig config;
  try {
    config = config_from_env();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (check->parsed()) return cmd_check(path, out, err);
  if (demo->parsed()) {
    std::optional<std::string> log;
    if (!log_path.empty()) log = log_path;
    return cmd_demo(name, out_path, log, config, out, err);
  }
  if (product->parsed()) {
    if (product_setting->count() > 0) setting = parse_setting(setting_value);
    std::optional<std::string> m;
    if (!m_expr.empty()) m = m_expr;
    return cmd_product(setting, problem, p_path, q_path, m, out_path, config, out, err);
  }
  if (perm->parsed()) return cmd_permute(path, factors, sigma, out_path, config, out, err);
  if (inter->parsed()) {
    if (inter_setting->count() > 0) setting = parse_setting(setting_value);
    return cmd_intersect(setting, p_path, q_path, out_path, config, out, err);
  }
  return kExitUsage;
}

}  // namespace nilcert
