// probscheme: command-line front end for the exact finite-probability engine.
//
// Documents are JSON with exact rationals as strings; see README for the
// formats. Exit status: 0 success / property true, 1 property false (a
// witness is reported), 2 input or usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prob/prob.hpp"

namespace {

using namespace prob;
namespace io = prob::io;

struct CommandIO {
  std::vector<std::string> inputs;
  std::string out_path;
  std::string format = "canonical";
  bool stdin_used = false;

  io::Style style() const {
    return format == "pretty" ? io::Style::pretty : io::Style::canonical;
  }
};

void add_common(CLI::App* cmd, CommandIO& cio) {
  cmd->add_option("--in", cio.inputs, "input document (file path or - for stdin)");
  cmd->add_option("--out", cio.out_path, "output file (default: stdout)");
  cmd->add_option("--format", cio.format, "output format")
      ->check(CLI::IsMember({"canonical", "pretty"}));
}

io::Document read_one(CommandIO& cio, const std::string& name) {
  if (name == "-") {
    require(!cio.stdin_used, errc::syntax_error, "stdin may be read only once");
    cio.stdin_used = true;
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return io::parse_document(buf.str(), std::filesystem::current_path());
  }
  return io::load_document(name);
}

std::vector<io::Document> read_all(CommandIO& cio) {
  std::vector<io::Document> docs;
  docs.reserve(cio.inputs.size());
  for (const auto& name : cio.inputs) docs.push_back(read_one(cio, name));
  return docs;
}

void write_output(const CommandIO& cio, const std::string& text) {
  if (cio.out_path.empty() || cio.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cio.out_path);
  require(out.good(), errc::syntax_error, "cannot open '" + cio.out_path + "'");
  out << text;
}

void expect_arity(const std::vector<io::Document>& docs, std::size_t n,
                  const char* usage) {
  require(docs.size() == n, errc::semantic_error,
          std::string("expected ") + std::to_string(n) + " input document(s): " + usage);
}

bool color_enabled() {
  const char* v = std::getenv("PROBSCHEME_COLOR");
  return v != nullptr && std::string(v) == "1";
}

std::string paint(const std::string& word, const char* code) {
  if (!color_enabled()) return word;
  return std::string("\x1b[") + code + "m" + word + "\x1b[0m";
}

std::string pass_word() { return paint("pass", "32"); }
std::string fail_word() { return paint("fail", "31"); }

// ---------------------------------------------------------------------------
// laws-check: run every applicable exact identity over the provided inputs.
// Linear identities are checked on the indicator basis, which spans the
// whole space, so a pass is a proof for all inputs on that scheme.

std::vector<RandomVariable> indicator_basis(const Scheme& s) {
  std::vector<RandomVariable> out;
  out.reserve(s.size());
  for (const auto& w : s.outcomes())
    out.push_back(indicator(Event(s, {w})));
  return out;
}

struct LawReport {
  std::vector<std::string> lines;
  bool all_pass = true;

  void record(const std::string& law, const std::string& context,
              const std::optional<std::string>& failure) {
    if (!failure) {
      lines.push_back(pass_word() + " " + law + " [" + context + "]");
    } else {
      all_pass = false;
      lines.push_back(fail_word() + " " + law + " [" + context + "]: " + *failure);
    }
  }
};

std::optional<std::string> check_bundle_functors(const Bundle& b) {
  auto base_basis = indicator_basis(b.base());
  auto total_basis = indicator_basis(b.total());
  for (const auto& z : base_basis) {
    if (fiber_average(b, pullback(b, z)) != z)
      return "flat-sharp is not the identity at '" +
             z.domain().outcome(0).str() + "'";
    if (expectation(pullback(b, z)) != expectation(z))
      return "pullback does not preserve expectation";
  }
  for (const auto& x : total_basis)
    if (expectation(fiber_average(b, x)) != expectation(x))
      return "fiber averaging does not preserve expectation";
  for (const auto& z : base_basis)
    for (const auto& x : total_basis) {
      if (fiber_sum(b, pullback(b, z) * x) != z * fiber_sum(b, x))
        return "projection formula fails";
      if (fiber_average(b, pullback(b, z) * x) != z * fiber_average(b, x))
        return "fiber averaging is not a module map";
    }
  return std::nullopt;
}

std::optional<std::string> check_projection_laws(
    const Partition& p, const std::vector<RandomVariable>& xs) {
  for (const auto& x : xs) {
    RandomVariable px = cond_expectation(x, p);
    if (cond_expectation(px, p) != px) return "not idempotent";
    if (!algebra_contains(p, px)) return "projection leaves the algebra";
    for (const auto& y : xs) {
      if (inner_product(px, y) != inner_product(x, cond_expectation(y, p)))
        return "not self-adjoint";
    }
    Rational via_base = expectation(px);
    if (via_base != expectation(x)) return "E'E differs from E";
    if (variance(x) !=
        expectation(cond_variance(x, p)) + variance(cond_expectation(x, p)))
      return "law of total variance fails";
  }
  for (const auto& block : p.blocks()) {
    RandomVariable ib = atom_indicator(p, block);
    if (cond_expectation(ib, p) != ib) return "not the identity on the algebra";
    for (const auto& x : xs)
      if (cond_expectation(ib * x, p) != ib * cond_expectation(x, p))
        return "not relatively linear";
  }
  return std::nullopt;
}

std::optional<std::string> check_fiberwise_independence(const Bundle& b1,
                                                        const Bundle& b2,
                                                        const FiberProduct& fp) {
  for (const auto& w0 : b1.base().outcomes()) {
    Scheme down_fiber = fiber_scheme(fp.down, w0);
    Scheme f1 = fiber_scheme(b1, w0);
    Scheme f2 = fiber_scheme(b2, w0);
    if (down_fiber.size() != f1.size() * f2.size())
      return "fiber over '" + w0.str() + "' has the wrong size";
    for (std::size_t i = 0; i < f1.size(); ++i)
      for (std::size_t j = 0; j < f2.size(); ++j) {
        OutcomeLabel point = OutcomeLabel::pair(f1.outcome(i), f2.outcome(j));
        if (down_fiber.mass(point) != f1.mass_at(i) * f2.mass_at(j))
          return "fiber over '" + w0.str() + "' is not an independent product at '" +
                 point.str() + "'";
      }
  }
  return std::nullopt;
}

int run_laws_check(CommandIO& cio) {
  auto docs = read_all(cio);
  require(!docs.empty(), errc::semantic_error, "laws-check needs at least one input");
  LawReport report;

  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::string ctx = std::string(io::kind_name(docs[d].kind())) + "#" +
                      std::to_string(d + 1);
    switch (docs[d].kind()) {
      case io::DocKind::scheme:
        report.record("scheme-normalization", ctx, std::nullopt);
        break;
      case io::DocKind::bundle:
        report.record("bundle-functor-identities", ctx,
                      check_bundle_functors(docs[d].bundle()));
        break;
      case io::DocKind::partition: {
        const Partition& p = docs[d].partition();
        std::vector<RandomVariable> xs;
        for (const auto& other : docs)
          if (other.kind() == io::DocKind::rv &&
              other.rv().domain() == p.domain())
            xs.push_back(other.rv());
        if (xs.empty()) xs = indicator_basis(p.domain());
        report.record("projection-laws", ctx, check_projection_laws(p, xs));
        break;
      }
      default:
        break;
    }
  }

  // Tower and total-covariance laws for every refinement pair.
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].kind() != io::DocKind::partition) continue;
    for (std::size_t j = 0; j < docs.size(); ++j) {
      if (i == j || docs[j].kind() != io::DocKind::partition) continue;
      const Partition& fine = docs[i].partition();
      const Partition& coarse = docs[j].partition();
      if (fine.domain() != coarse.domain() || !refines(fine, coarse)) continue;
      std::string ctx = "partition#" + std::to_string(i + 1) + ",partition#" +
                        std::to_string(j + 1);
      std::optional<std::string> failure;
      for (const auto& x : indicator_basis(fine.domain())) {
        if (cond_expectation(cond_expectation(x, fine), coarse) !=
            cond_expectation(x, coarse)) {
          failure = "tower law fails";
          break;
        }
        for (const auto& y : indicator_basis(fine.domain())) {
          auto dec = total_covariance_decomposition(x, y, fine, coarse);
          if (dec.lhs != dec.rhs_sum) {
            failure = "law of total covariance fails";
            break;
          }
        }
        if (failure) break;
      }
      report.record("tower-and-total-covariance", ctx, failure);
    }
  }

  // Law of total expectation for every rf/rv pair on one scheme.
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].kind() != io::DocKind::rf) continue;
    for (std::size_t j = 0; j < docs.size(); ++j) {
      if (docs[j].kind() != io::DocKind::rv) continue;
      if (docs[j].rv().domain() != docs[i].rf().domain()) continue;
      std::string ctx = "rf#" + std::to_string(i + 1) + ",rv#" + std::to_string(j + 1);
      std::optional<std::string> failure;
      if (!check_total_expectation(docs[j].rv(), docs[i].rf()))
        failure = "law of total expectation fails";
      report.record("total-expectation", ctx, failure);
    }
  }

  // Fiber product laws for every base-compatible bundle pair.
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].kind() != io::DocKind::bundle) continue;
    for (std::size_t j = i; j < docs.size(); ++j) {
      if (docs[j].kind() != io::DocKind::bundle) continue;
      const Bundle& b1 = docs[i].bundle();
      const Bundle& b2 = docs[j].bundle();
      if (b1.base() != b2.base()) continue;
      std::string ctx = "bundle#" + std::to_string(i + 1) + ",bundle#" +
                        std::to_string(j + 1);
      std::optional<std::string> failure;
      FiberProduct fp = fiber_product(b1, b2);
      if (fiber_sum(fp.theta1, mass_variable(fp.product)) != mass_variable(b1.total()))
        failure = "first marginal law fails";
      else if (fiber_sum(fp.theta2, mass_variable(fp.product)) !=
               mass_variable(b2.total()))
        failure = "second marginal law fails";
      if (!failure) failure = check_fiberwise_independence(b1, b2, fp);
      if (!failure) {
        for (const auto& a2 : indicator_basis(b2.total())) {
          auto bc = base_change_check(b1, b2, a2);
          if (bc.lhs != bc.rhs) {
            failure = "base-change identity fails";
            break;
          }
        }
      }
      report.record("fiber-product-laws", ctx, failure);
    }
  }

  std::string text;
  for (const auto& line : report.lines) text += line + "\n";
  write_output(cio, text);
  return report.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_validate(CommandIO& cio) {
  auto docs = read_all(cio);
  require(!docs.empty(), errc::semantic_error, "validate needs at least one input");
  std::string out;
  for (const auto& doc : docs) out += io::serialize_document(doc, cio.style());
  write_output(cio, out);
  return 0;
}

int run_expect(CommandIO& cio) {
  auto docs = read_all(cio);
  expect_arity(docs, 1, "expect --in <rv>");
  write_output(cio, expectation(docs[0].rv()).str() + "\n");
  return 0;
}

int run_dist_scheme(CommandIO& cio, const std::string& emit) {
  auto docs = read_all(cio);
  expect_arity(docs, 1, "dist-scheme --in <rf>");
  DistributionScheme d = distribution_scheme(docs[0].rf());
  io::Document out{emit == "bundle" ? io::Document{std::move(d.bundle)}
                                    : io::Document{std::move(d.scheme)}};
  write_output(cio, io::serialize_document(out, cio.style()));
  return 0;
}

int run_condexp(CommandIO& cio) {
  auto docs = read_all(cio);
  expect_arity(docs, 2, "condexp --in <rv> --in <partition>");
  RandomVariable result = cond_expectation(docs[0].rv(), docs[1].partition());
  write_output(cio, io::serialize_document(io::Document{std::move(result)},
                                           cio.style()));
  return 0;
}

int run_regress(CommandIO& cio, bool full) {
  auto docs = read_all(cio);
  expect_arity(docs, 2, "regress --in <rv X> --in <rv Y>");
  RegressionResult r = linear_regression(docs[0].rv(), docs[1].rv());
  io::ordered_json out;
  out["slope"] = r.slope.str();
  out["intercept"] = r.intercept.str();
  out["var_fitted"] = r.var_fitted.str();
  out["var_residual"] = r.var_residual.str();
  out["r_squared"] =
      r.r_squared ? io::ordered_json(r.r_squared->str()) : io::ordered_json(nullptr);
  if (full) {
    out["fitted"] = io::document_to_json(io::Document{r.fitted});
    out["residual"] = io::document_to_json(io::Document{r.residual});
  }
  write_output(cio, io::render(out, cio.style()));
  return 0;
}

int run_chebyshev(CommandIO& cio, const std::string& eps) {
  auto docs = read_all(cio);
  expect_arity(docs, 1, "chebyshev --in <rv> --eps <rational>");
  ChebyshevCheck c = chebyshev_check(docs[0].rv(), Rational::parse(eps));
  io::ordered_json out;
  out["lhs"] = c.lhs.str();
  out["bound"] = c.bound.str();
  write_output(cio, io::render(out, cio.style()));
  return 0;
}

int run_wlln(CommandIO& cio, const std::string& k, const std::string& eps) {
  auto docs = read_all(cio);
  require(!docs.empty(), errc::semantic_error,
          "wlln --in <rv>... --K <rational> --eps <rational>");
  std::vector<RandomVariable> xs;
  xs.reserve(docs.size());
  for (const auto& d : docs) xs.push_back(d.rv());
  WllnCertificate w = wlln_certificate(xs, Rational::parse(k), Rational::parse(eps));
  io::ordered_json out;
  out["var_mean"] = w.var_mean.str();
  out["bound"] = w.bound.str();
  write_output(cio, io::render(out, cio.style()));
  return 0;
}

int run_fiberprod(CommandIO& cio, const std::string& emit) {
  auto docs = read_all(cio);
  expect_arity(docs, 2, "fiberprod --in <bundle> --in <bundle>");
  FiberProduct fp = fiber_product(docs[0].bundle(), docs[1].bundle());
  io::Document out{[&]() -> io::Document {
    if (emit == "theta1") return io::Document{std::move(fp.theta1)};
    if (emit == "theta2") return io::Document{std::move(fp.theta2)};
    if (emit == "down") return io::Document{std::move(fp.down)};
    return io::Document{std::move(fp.product)};
  }()};
  write_output(cio, io::serialize_document(out, cio.style()));
  return 0;
}

int run_condindep(CommandIO& cio) {
  auto docs = read_all(cio);
  expect_arity(docs, 3, "condindep --in <rf X> --in <rf Y> --in <rf Z>");
  CondIndependence ci =
      cond_independent(docs[0].rf(), docs[1].rf(), docs[2].rf());
  io::ordered_json out;
  out["independent"] = ci.independent;
  if (ci.witness) out["witness"] = ci.witness->describe();
  write_output(cio, io::render(out, cio.style()));
  return ci.independent ? 0 : 1;
}

int run_markov_check(CommandIO& cio) {
  auto docs = read_all(cio);
  require(!docs.empty(), errc::semantic_error,
          "markov-check --in <scheme over tuples> | --in <rf>...");
  std::vector<RandomFunction> chain;
  if (docs.size() == 1 && docs[0].kind() == io::DocKind::scheme) {
    chain = path_coordinates(docs[0].scheme());
  } else {
    for (const auto& d : docs) chain.push_back(d.rf());
  }
  MarkovCheck mc = markov_verify(chain);
  io::ordered_json out;
  out["markov"] = mc.is_markov;
  if (!mc.is_markov) {
    out["failing_index"] = mc.first_failing_index;
    if (mc.witness) out["witness"] = mc.witness->describe();
  }
  write_output(cio, io::render(out, cio.style()));
  return mc.is_markov ? 0 : 1;
}

int run_markov_build(CommandIO& cio) {
  auto docs = read_all(cio);
  expect_arity(docs, 1, "markov-build --in <pairs>");
  Scheme path = markov_build(docs[0].pairs());
  write_output(cio, io::serialize_document(io::Document{std::move(path)},
                                           cio.style()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite probability schemes: bundles, conditional "
               "expectation, fiber products, Markov chains"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    CommandIO cio;
  };
  std::map<std::string, Sub> subs;
  auto add = [&](const std::string& name, const std::string& desc) -> Sub& {
    Sub& s = subs[name];
    s.cmd = app.add_subcommand(name, desc);
    add_common(s.cmd, s.cio);
    return s;
  };

  add("validate", "parse, validate and canonicalize documents");
  add("expect", "expectation of a random variable");
  add("condexp", "conditional expectation of an rv relative to a partition");
  auto& regress = add("regress", "simple linear regression of Y on X");
  bool regress_full = false;
  regress.cmd->add_flag("--full", regress_full, "include fitted and residual rvs");
  auto& chebyshev = add("chebyshev", "deviation probability and Chebyshev bound");
  std::string cheb_eps;
  chebyshev.cmd->add_option("--eps", cheb_eps, "deviation threshold")->required();
  auto& wlln = add("wlln", "weak law of large numbers certificate");
  std::string wlln_k, wlln_eps;
  wlln.cmd->add_option("--K", wlln_k, "variance bound")->required();
  wlln.cmd->add_option("--eps", wlln_eps, "deviation threshold")->required();
  auto& fiberprod = add("fiberprod", "fiber product of two bundles over one base");
  std::string fp_emit = "product";
  fiberprod.cmd->add_option("--emit", fp_emit, "what to output")
      ->check(CLI::IsMember({"product", "theta1", "theta2", "down"}));
  add("condindep", "conditional independence of X and Y given Z");
  add("markov-check", "verify the Markov property of a chain");
  add("markov-build", "glue adjacent-pair schemes into a path scheme");
  auto& dist = add("dist-scheme", "distribution scheme of a random function");
  std::string dist_emit = "scheme";
  dist.cmd->add_option("--emit", dist_emit, "what to output")
      ->check(CLI::IsMember({"scheme", "bundle"}));
  add("laws-check", "run the exact-identity suite over the inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (subs["validate"].cmd->parsed()) return run_validate(subs["validate"].cio);
    if (subs["expect"].cmd->parsed()) return run_expect(subs["expect"].cio);
    if (subs["condexp"].cmd->parsed()) return run_condexp(subs["condexp"].cio);
    if (subs["regress"].cmd->parsed())
      return run_regress(subs["regress"].cio, regress_full);
    if (subs["chebyshev"].cmd->parsed())
      return run_chebyshev(subs["chebyshev"].cio, cheb_eps);
    if (subs["wlln"].cmd->parsed())
      return run_wlln(subs["wlln"].cio, wlln_k, wlln_eps);
    if (subs["fiberprod"].cmd->parsed())
      return run_fiberprod(subs["fiberprod"].cio, fp_emit);
    if (subs["condindep"].cmd->parsed()) return run_condindep(subs["condindep"].cio);
    if (subs["markov-check"].cmd->parsed())
      return run_markov_check(subs["markov-check"].cio);
    if (subs["markov-build"].cmd->parsed())
      return run_markov_build(subs["markov-build"].cio);
    if (subs["dist-scheme"].cmd->parsed())
      return run_dist_scheme(subs["dist-scheme"].cio, dist_emit);
    if (subs["laws-check"].cmd->parsed()) return run_laws_check(subs["laws-check"].cio);
  } catch (const prob::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no command\n";
  return 2;
}
