// mdx: command-line front end for the double-metric toolkit.
//
// Every run prints one JSON report. Exit codes: 0 success / property
// verified, 1 verification failure, 2 input error.

#include "mdbl/asymptotic.hpp"
#include "mdbl/rep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <omp.h>

using nlohmann::json;
using namespace mdbl;

namespace {

constexpr int kMaxPoints = 4096;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExtValue ext_from_json(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf") return ExtValue::inf();
    return ExtValue(rat_from_string(s));
  }
  if (v.is_number_integer()) return ExtValue(Rat(v.get<long long>()));
  if (v.is_number_unsigned()) return ExtValue(Rat(static_cast<long long>(v.get<unsigned long long>())));
  if (v.is_number_float()) return ExtValue(rat_from_double(v.get<double>()));
  throw InputError("matrix entry must be a number or \"inf\"/\"p/q\" string");
}

json ext_to_json(const ExtValue& v) {
  if (v.is_inf()) return "inf";
  if (v.finite().denominator() == 1) return v.finite().numerator();
  return rat_to_string(v.finite());
}

ExtMatrix matrix_from_json(const json& m, int n) {
  if (!m.is_array() || static_cast<int>(m.size()) != n)
    throw InputError("matrix must be an n x n array");
  ExtMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    if (!m[i].is_array() || static_cast<int>(m[i].size()) != n)
      throw InputError("matrix row has wrong length");
    for (int j = 0; j < n; ++j) out.at(i, j) = ext_from_json(m[i][j]);
  }
  return out;
}

json matrix_to_json(const ExtMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(ext_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

int json_n(const json& j, const std::string& path) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw InputError(path + ": missing integer field \"n\"");
  int n = j["n"].get<int>();
  if (n < 1 || n > kMaxPoints) throw InputError(path + ": n out of range");
  return n;
}

SpacePtr load_space(const std::string& path) {
  json j = load_file(path);
  int n = json_n(j, path);
  if (!j.contains("dist")) throw InputError(path + ": missing \"dist\"");
  try {
    return make_space(matrix_from_json(j["dist"], n));
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

// A double file carries "n", "dist" and "cross"; a bare cross file may omit
// "dist" when the space comes from elsewhere.
ExtMatrix load_cross(const std::string& path, int n) {
  json j = load_file(path);
  if (j.contains("n") && json_n(j, path) != n)
    throw InputError(path + ": size differs from the space file");
  if (!j.contains("cross")) throw InputError(path + ": missing \"cross\"");
  return matrix_from_json(j["cross"], n);
}

DoubleMetric load_double(const std::string& path) {
  json j = load_file(path);
  int n = json_n(j, path);
  if (!j.contains("dist") || !j.contains("cross"))
    throw InputError(path + ": a double metric needs \"dist\" and \"cross\"");
  SpacePtr sp;
  try {
    sp = make_space(matrix_from_json(j["dist"], n));
    return make_double(sp, matrix_from_json(j["cross"], n));
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << text;
  }
}

json violations_json(const ValidationReport& rep) {
  json arr = json::array();
  for (const auto& v : rep.violations)
    arr.push_back({{"family", std::string(1, v.family)},
                   {"i", v.i},
                   {"j", v.j},
                   {"k", v.k},
                   {"lhs", ext_to_json(v.lhs)},
                   {"rhs", ext_to_json(v.rhs)}});
  return arr;
}

json table_json(const SemigroupTable& t) {
  json elements = json::array();
  for (const auto& p : t.elements) elements.push_back(p.encode());
  return {{"elements", elements}, {"mul", t.mul}, {"star", t.star},
          {"unit", t.unit},       {"zero", t.zero}};
}

json series_json(const FitSeries& fs) {
  json alphas = json::array();
  for (const auto& a : fs.alphas) alphas.push_back(rat_to_string(a));
  return {{"sizes", fs.sizes},
          {"beta", rat_to_string(fs.beta)},
          {"alphas", alphas},
          {"verdict", verdict_name(fs.verdict)},
          {"threshold", rat_to_string(fs.threshold)},
          {"monotone_tail", fs.monotone_tail},
          {"note", "heuristic verdict: numerical evidence, not a proof"}};
}

std::string series_csv(const FitSeries& fs) {
  std::string csv = "size,beta,alpha,verdict\n";
  for (size_t i = 0; i < fs.alphas.size(); ++i)
    csv += std::to_string(fs.sizes[i]) + "," + rat_to_string(fs.beta) + "," +
           rat_to_string(fs.alphas[i]) + "," + verdict_name(fs.verdict) + "\n";
  return csv;
}

MetricFamily resolve_family(const std::string& name) {
  if (name.rfind("unit:", 0) == 0) {
    MetricFamily base = resolve_family(name.substr(5));
    MetricFamily g;
    g.name = name;
    auto gen = base.gen;
    g.gen = [gen](int n) {
      FamilyInstance inst = gen(n);
      inst.metric = unit_metric(inst.metric.space);
      inst.trusted.clear();
      return inst;
    };
    return g;
  }
  if (name.rfind("adjoint:", 0) == 0) return adjoint_family(resolve_family(name.substr(8)));
  if (name.rfind("square:", 0) == 0) {
    MetricFamily base = resolve_family(name.substr(7));
    return composed_family(base, base);
  }
  return family_by_name(name);
}

std::vector<Rat> parse_betas(const std::vector<std::string>& raw) {
  if (raw.empty()) return default_beta_grid();
  std::vector<Rat> out;
  for (const auto& s : raw) out.push_back(rat_from_string(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-isometry classes of metrics on the double of a space"};
  app.require_subcommand(1);
  int threads = 0;
  std::string out_path;
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_option("-o,--output", out_path, "write the report here instead of stdout");

  std::string space_path, cross_path, a_path, b_path, dot_path;
  std::string family, vs = "adjoint", demo_name;
  std::vector<int> sizes;
  std::vector<std::string> betas_raw;
  double angle = 45.0, beta_opt = 2.0;

  auto* c_validate = app.add_subcommand("validate", "check a cross matrix against a space");
  c_validate->add_option("space", space_path)->required();
  c_validate->add_option("cross", cross_path)->required();

  auto* c_compose = app.add_subcommand("compose", "min-plus composition a after b");
  c_compose->add_option("a", a_path)->required();
  c_compose->add_option("b", b_path)->required();

  auto* c_enum = app.add_subcommand("enumerate", "all quasi-isometry classes of a space");
  c_enum->add_option("space", space_path)->required();
  c_enum->add_option("--dot", dot_path, "write a DOT rendering of the order");

  auto* c_order = app.add_subcommand("order", "natural partial order on idempotents");
  c_order->add_option("space", space_path)->required();

  auto* c_repr = app.add_subcommand("repr", "block structure of the regular representation");
  c_repr->add_option("space", space_path)->required();

  auto* c_fit = app.add_subcommand("fit", "quasi-isometry fit between two families");
  c_fit->add_option("--family", family)->required();
  c_fit->add_option("--vs", vs, "second family, or adjoint/unit/square of the first");
  c_fit->add_option("--sizes", sizes);
  c_fit->add_option("--betas", betas_raw);

  auto* c_crit = app.add_subcommand("criterion", "idempotency criterion along a family");
  c_crit->add_option("--family", family)->required();
  c_crit->add_option("--sizes", sizes);
  c_crit->add_option("--betas", betas_raw);

  auto* c_sep = app.add_subcommand("separation", "orthogonality bound for two lattice rays");
  c_sep->add_option("--angle", angle, "angle of the second ray (first is at 0 deg)");
  c_sep->add_option("--beta", beta_opt);
  c_sep->add_option("--sizes", sizes);

  auto* c_demo = app.add_subcommand("demo", "built-in end-to-end demos");
  c_demo->add_option("name", demo_name, "pisom | neighborhood")->required();
  c_demo->add_option("--sizes", sizes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    json report;
    int status = 0;

    if (*c_validate) {
      SpacePtr sp = load_space(space_path);
      ExtMatrix cross = load_cross(cross_path, sp->size());
      ValidationReport rep = validate_cross(*sp, *sp, cross);
      report = {{"command", "validate"},
                {"claim", "a cross matrix extends the space metric iff positivity "
                          "and all four mixed triangle families hold"},
                {"n", sp->size()},
                {"ok", rep.ok()},
                {"violations", violations_json(rep)}};
      status = rep.ok() ? 0 : 1;
    } else if (*c_compose) {
      DoubleMetric a = load_double(a_path);
      DoubleMetric b = load_double(b_path);
      if (!(*a.space == *b.space)) throw InputError("compose: spaces differ");
      DoubleMetric ab = compose(a, b);
      report = {{"command", "compose"},
                {"claim", "min-plus composition of valid doubles is a valid double"},
                {"n", ab.size()},
                {"cross", matrix_to_json(ab.cross)},
                {"ok", validate_double(ab).ok()}};
      status = validate_double(ab).ok() ? 0 : 1;
    } else if (*c_enum) {
      SpacePtr sp = load_space(space_path);
      SemigroupTable t = enumerate(sp);
      VerifyReport v = verify_inverse_semigroup(t);
      if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        if (!dot) throw InputError("cannot write " + dot_path);
        dot << semigroup_dot(t);
      }
      report = {{"command", "enumerate"},
                {"claim", "the quasi-isometry classes form a finite inverse monoid, "
                          "one class per realizable finiteness pattern"},
                {"classes", t.size()},
                {"components", sp->component_count()},
                {"table", table_json(t)},
                {"verified", v.ok},
                {"failures", v.failures}};
      status = v.ok ? 0 : 1;
    } else if (*c_order) {
      SpacePtr sp = load_space(space_path);
      SemigroupTable t = enumerate(sp);
      json idem = json::array();
      json leq = json::array();
      for (int e = 0; e < t.size(); ++e)
        if (t.idempotent[e]) idem.push_back(e);
      for (const auto& ej : idem) {
        json row = json::array();
        for (const auto& fj : idem)
          row.push_back(natural_order(t, ej.get<int>(), fj.get<int>()));
        leq.push_back(std::move(row));
      }
      report = {{"command", "order"},
                {"claim", "e <= f iff f e = e is a partial order on idempotents"},
                {"idempotents", idem},
                {"leq", leq}};
    } else if (*c_repr) {
      SpacePtr sp = load_space(space_path);
      SemigroupTable t = enumerate(sp);
      RegularRep rep = build_rep(t);
      AlgebraSummary sum = decompose(rep);
      report = {{"command", "repr"},
                {"claim", "the regular representation spans a direct sum of full "
                          "matrix blocks"},
                {"algebra_dim", sum.algebra_dim},
                {"center_dim", sum.center_dim},
                {"block_dims", sum.block_dims},
                {"generators", t.size()},
                {"verified", sum.verified}};
      status = sum.verified ? 0 : 1;
    } else if (*c_fit) {
      MetricFamily f1 = resolve_family(family);
      MetricFamily f2 = (vs == "adjoint" || vs == "unit" || vs == "square")
                            ? resolve_family(vs + ":" + family)
                            : resolve_family(vs);
      FitSeries fs = fit_series(f1, f2, sizes.empty() ? default_sizes() : sizes,
                                parse_betas(betas_raw));
      report = {{"command", "fit"},
                {"claim", "quasi-isometry of metric families, witnessed by a "
                          "bounded alpha along the truncations"},
                {"family", f1.name},
                {"vs", f2.name},
                {"series", series_json(fs)},
                {"csv", series_csv(fs)}};
    } else if (*c_crit) {
      MetricFamily f = resolve_family(family);
      FitSeries fs = criterion_series(f, sizes.empty() ? default_sizes() : sizes,
                                      parse_betas(betas_raw));
      report = {{"command", "criterion"},
                {"claim", "a selfadjoint metric is idempotent iff "
                          "-alpha + d(x,x')/beta <= d(x,X') for some witness"},
                {"family", f.name},
                {"series", series_json(fs)},
                {"csv", series_csv(fs)}};
    } else if (*c_sep) {
      SeparationReport rep = separation_check(
          0.0, angle, sizes.empty() ? std::vector<int>{16, 32, 64, 128} : sizes,
          beta_opt);
      report = {{"command", "separation"},
                {"claim", "for beta-separated rays, e0(x,x') <= "
                          "4 beta (d_A d_B)(x,x') + 1, so [d_A] and [d_B] are "
                          "orthogonal over the point class"},
                {"angle", angle},
                {"beta", beta_opt},
                {"sizes", rep.sizes},
                {"condition_ok", rep.condition_ok},
                {"holds", rep.holds},
                {"worst_margin", rep.worst_margin},
                {"detail", rep.detail}};
      status = rep.holds ? 0 : 1;
    } else if (*c_demo) {
      std::vector<int> sz = sizes.empty() ? default_sizes() : sizes;
      if (demo_name == "pisom") {
        PartialIsometryReport rep = partial_isometry_demo(sz);
        report = {{"command", "demo"},
                  {"name", "pisom"},
                  {"claim", "the half-line reflection metric is a partial isometry "
                            "from the nonnegative-subset class to the "
                            "nonpositive-subset class"},
                  {"dstar_d_vs_da", series_json(rep.dstar_d_vs_da)},
                  {"d_dstar_vs_db", series_json(rep.d_dstar_vs_db)},
                  {"closed_form_ok", rep.closed_form_ok},
                  {"ok", rep.ok()}};
        status = rep.ok() ? 0 : 1;
      } else if (demo_name == "neighborhood") {
        json pairs = json::array();
        bool all_consistent = true;
        auto run_pair = [&](const std::string& a, const std::string& b) {
          NeighborhoodReport rep =
              neighborhood_check(subset_family_by_name(a), subset_family_by_name(b), sz);
          json gaps = json::array();
          for (const auto& g : rep.gaps) gaps.push_back(ext_to_json(g));
          pairs.push_back({{"a", a},
                           {"b", b},
                           {"gaps", gaps},
                           {"gap_verdict", verdict_name(rep.verdict)},
                           {"fit_verdict", verdict_name(rep.fit_verdict)},
                           {"consistent", rep.consistent}});
          all_consistent = all_consistent && rep.consistent;
        };
        run_pair("even", "odd");
        run_pair("even", "nonneg");
        run_pair("nonneg", "nonpos");
        report = {{"command", "demo"},
                  {"name", "neighborhood"},
                  {"claim", "subset classes agree iff the subsets lie within a "
                            "bounded mutual neighborhood"},
                  {"pairs", pairs},
                  {"ok", all_consistent}};
        status = all_consistent ? 0 : 1;
      } else {
        throw InputError("unknown demo: " + demo_name);
      }
    }

    emit(report, out_path);
    return status;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
