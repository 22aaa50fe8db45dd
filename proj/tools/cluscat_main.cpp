// cluscat: exact rank-2 scattering diagrams, acyclic finite-type Cambrian
// fans and broken-line theta functions on the command line.
//
// Exit codes: 0 success, 1 verification or consistency failure, 2 usage or
// input error. Output is deterministic for fixed flags; relative output
// paths resolve against $CLUSCAT_OUT_DIR when it is set.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cluscat/cluster.hpp"
#include "cluscat/coxeter.hpp"
#include "cluscat/json_io.hpp"
#include "cluscat/scat.hpp"
#include "cluscat/svg.hpp"
#include "cluscat/theta.hpp"
#include "cluscat/verify.hpp"

namespace {

using cluscat::CambrianDiagram;
using cluscat::CheckResult;
using cluscat::IntMat;
using cluscat::IntVec;
using cluscat::Json;
using cluscat::LaurentElement;
using cluscat::Rational;
using cluscat::Scat2;
using cluscat::TruncatedSeries;

std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv("CLUSCAT_OUT_DIR");
  if (dir != nullptr && *dir != '\0' && p.is_relative()) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::invalid_argument("cannot open " + p.string());
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

IntVec parse_long_pair(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument(what + " must be two comma-separated integers");
  }
  IntVec v;
  for (const std::string& p : parts) {
    size_t used = 0;
    const long x = std::stol(p, &used);
    if (used != p.size()) {
      throw std::invalid_argument(what + ": bad integer '" + p + "'");
    }
    v.push_back(x);
  }
  return v;
}

std::vector<Rational> parse_rational_pair(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument("endpoint must be two comma-separated rationals");
  }
  return {cluscat::parse_rational(parts[0]), cluscat::parse_rational(parts[1])};
}

std::string vec_to_string(const IntVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

// Splits a 2x2 exchange matrix into the (a, b) pair of the rank-2 engine.
std::pair<long, long> rank2_entries(const IntMat& m) {
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2 ||
      m[0][0] != 0 || m[1][1] != 0 || m[0][1] * m[1][0] > 0 ||
      (m[0][1] == 0) != (m[1][0] == 0)) {
    throw std::invalid_argument(
        "rank-2 exchange matrix must be [[0,b],[a,0]] with ab <= 0");
  }
  return {m[1][0], m[0][1]};
}

int cmd_build(const std::string& b_str, int order,
              const std::string& svg_path, const std::string& out_path,
              const std::string& format) {
  const IntMat m = cluscat::parse_matrix(b_str);
  if (m.size() == 2) {
    const auto [a, b] = rank2_entries(m);
    const Scat2 d = cluscat::complete_rank2(a, b, order);
    const auto rep = d.consistency();
    if (!rep.consistent) {
      std::cerr << "inconsistent diagram at order " << rep.first_failure_order
                << "\n";
      return 1;
    }
    const Json j = cluscat::diagram_to_json(d);
    write_file(resolve_out(out_path), j.dump(2) + "\n");
    if (!svg_path.empty()) {
      write_file(resolve_out(svg_path), cluscat::render_svg(d));
    }
    if (format == "json") {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "rank-2 diagram: B = [[0," << b << "],[" << a
                << ",0]], order " << order << "\n";
      std::cout << "walls: 2 axis lines + " << d.diagonal_walls().size()
                << " rays\n";
      for (const auto& [ray, w] : d.diagonal_walls()) {
        std::cout << "  ray " << vec_to_string(ray) << ": normal "
                  << vec_to_string(w.normal) << ", function "
                  << w.func.to_string() << "\n";
      }
      std::cout << "wrote " << resolve_out(out_path).string() << "\n";
    }
    return 0;
  }
  // Higher rank: acyclic finite type through the sortable-cone fan.
  if (!svg_path.empty()) {
    throw std::invalid_argument("--svg is only available for rank-2 input");
  }
  const CambrianDiagram d = CambrianDiagram::from_exchange(m, order);
  if (!cluscat::check_outgoing(d).empty() ||
      !cluscat::check_consistency(d).consistent) {
    std::cerr << "fan failed the consistency checks\n";
    return 1;
  }
  const Json j = cluscat::fan_to_json(d);
  write_file(resolve_out(out_path), j.dump(2) + "\n");
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "fan: rank " << d.group().rank() << ", order " << order
              << ", " << d.sortables().size() << " cones, "
              << d.walls().size() << " walls\n";
    std::cout << "wrote " << resolve_out(out_path).string() << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& name, int order, const std::string& type,
               const std::string& format) {
  CheckResult res;
  if (name == "aff-wall") {
    res = cluscat::check_affine_walls(order);
  } else if (name == "narayana") {
    res = cluscat::check_narayana_routes(order);
  } else if (name == "f-lemmas") {
    res = cluscat::check_f_polynomial_structure();
  } else if (name == "rank2-figures") {
    res = cluscat::check_finite_rank2_figures(order);
  } else if (name == "camb-consist") {
    res = cluscat::check_cambrian_fans(order, type);
  } else if (name == "greg-shards") {
    res = cluscat::check_gregarious_shards(order);
  } else if (name == "theta-examples") {
    res = cluscat::check_theta_examples();
  } else if (name == "cluster-pop") {
    res = cluscat::check_transport_cluster_variables(order);
  } else if (name == "hypergeom") {
    res = cluscat::check_hypergeometric_identity();
  } else {
    throw std::invalid_argument("unknown check name: " + name);
  }
  if (format == "json") {
    Json j;
    j["check"] = name;
    j["status"] = res.pass ? "pass" : "fail";
    j["detail"] = res.detail;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "check " << name << ": " << (res.pass ? "pass" : "fail")
              << "\n  " << res.detail << "\n";
  }
  return res.pass ? 0 : 1;
}

int cmd_theta(long a, long b, const std::string& g_str, int order,
              const std::string& endpoint_str, const std::string& svg_path,
              const std::string& format) {
  const IntVec lambda = parse_long_pair(g_str, "--g");
  const Scat2 d = cluscat::complete_rank2(a, b, order);
  std::optional<std::vector<Rational>> endpoint;
  if (!endpoint_str.empty()) endpoint = parse_rational_pair(endpoint_str);
  const LaurentElement t =
      endpoint ? cluscat::theta_function_at(d, lambda, *endpoint, order)
               : cluscat::theta_function(d, lambda, order);
  if (format == "json") {
    Json j;
    j["B"] = IntMat{{0, b}, {a, 0}};
    j["g"] = lambda;
    j["order"] = order;
    j["theta"] = cluscat::laurent_to_string(t);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "theta_" << vec_to_string(lambda) << " = "
              << cluscat::laurent_to_string(t) << "\n";
  }
  if (!svg_path.empty()) {
    std::vector<cluscat::BrokenLine> lines;
    if (endpoint) {
      lines = cluscat::enumerate_broken_lines(d, lambda, *endpoint, order);
    } else {
      for (const auto& p : {std::pair<long, long>{7, 3}, {19, 2}, {23, 5}}) {
        try {
          lines = cluscat::enumerate_broken_lines(
              d, lambda, {Rational(p.first), Rational(p.second)}, order);
          break;
        } catch (const cluscat::NonGenericEndpoint&) {
        }
      }
    }
    write_file(resolve_out(svg_path), cluscat::render_svg(d, lines));
  }
  return 0;
}

int cmd_cluster_fpoly(long a, long b, long i, int order,
                      const std::string& format) {
  const auto var = cluscat::rank2_cluster_variable(a, b, i, order);
  if (format == "json") {
    Json j;
    j["B"] = IntMat{{0, b}, {a, 0}};
    j["i"] = i;
    j["g"] = var.g;
    j["F"] = var.f.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "x_" << i << ": g = " << vec_to_string(var.g)
              << ", F = " << var.f.to_string() << "\n";
  }
  return 0;
}

int cmd_cluster_limiting_wall(long a, long b, int order,
                              const std::string& format) {
  const cluscat::LimitingWall lw = cluscat::limiting_wall_function(a, b, order);
  if (format == "json") {
    Json j;
    j["B"] = IntMat{{0, b}, {a, 0}};
    j["order"] = order;
    j["normal"] = lw.normal;
    j["ray"] = lw.ray;
    j["function"] = lw.function.to_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "limiting wall: normal " << vec_to_string(lw.normal)
              << ", ray " << vec_to_string(lw.ray) << "\n  function "
              << lw.function.to_string() << "\n";
  }
  return 0;
}

int cmd_cluster_narayana(int order, const std::string& route,
                         const std::string& format) {
  TruncatedSeries out(2, order);
  bool agree = true;
  if (route == "closed") {
    out = cluscat::narayana_series_closed(order);
  } else if (route == "recurrence") {
    out = cluscat::narayana_series_recurrence(order);
  } else if (route == "limit") {
    out = cluscat::narayana_series_limit(order);
  } else {
    out = cluscat::narayana_series_closed(order);
    agree = out == cluscat::narayana_series_recurrence(order) &&
            out == cluscat::narayana_series_limit(order);
  }
  if (format == "json") {
    Json j;
    j["order"] = order;
    j["route"] = route;
    j["series"] = out.to_string();
    if (route == "all") j["routes_agree"] = agree;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "N = " << out.to_string() << "\n";
    if (route == "all") {
      std::cout << (agree ? "routes agree\n" : "routes disagree\n");
    }
  }
  return agree ? 0 : 1;
}

int cmd_cambrian_build(const std::string& b_str, int order,
                       const std::string& check, const std::string& out_path,
                       const std::string& format) {
  const IntMat m = cluscat::parse_matrix(b_str);
  const CambrianDiagram d = CambrianDiagram::from_exchange(m, order);
  bool checks_ok = true;
  if (check == "all") {
    checks_ok = cluscat::check_outgoing(d).empty() &&
                cluscat::check_consistency(d).consistent;
  }
  const Json j = cluscat::fan_to_json(d);
  write_file(resolve_out(out_path), j.dump(2) + "\n");
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "fan: rank " << d.group().rank() << ", order " << order
              << ", " << d.sortables().size() << " cones, "
              << d.walls().size() << " walls\n";
    if (check == "all") {
      std::cout << "checks: " << (checks_ok ? "pass" : "fail") << "\n";
    }
    std::cout << "wrote " << resolve_out(out_path).string() << "\n";
  }
  return checks_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact rank-2 scattering diagrams, Cambrian fans and broken-line "
      "theta functions"};
  app.require_subcommand(1);
  const auto order_range = CLI::Range(1, 32);
  const auto format_member = CLI::IsMember({"json", "text"});

  auto* build = app.add_subcommand(
      "build", "complete a diagram from an exchange matrix and dump it");
  std::string build_b;
  int build_order = 10;
  std::string build_svg, build_out = "walls.json", build_format = "text";
  build->add_option("--b", build_b, "exchange matrix, e.g. \"0,2;-2,0\"")
      ->required();
  build->add_option("--order", build_order, "truncation order")
      ->check(order_range);
  build->add_option("--svg", build_svg, "write an SVG rendering (rank 2)");
  build->add_option("--out", build_out, "output JSON path");
  build->add_option("--format", build_format, "stdout format")
      ->check(format_member);

  auto* verify = app.add_subcommand("verify", "run a named verification");
  std::string verify_name, verify_type, verify_format = "text";
  int verify_order = 10;
  verify
      ->add_option("check", verify_name,
                   "one of aff-wall, narayana, f-lemmas, rank2-figures, "
                   "camb-consist, greg-shards, theta-examples, cluster-pop, "
                   "hypergeom")
      ->required();
  verify->add_option("--order", verify_order, "truncation order")
      ->check(order_range);
  verify->add_option("--type", verify_type,
                     "restrict camb-consist to one type (e.g. A3)");
  verify->add_option("--format", verify_format, "report format")
      ->check(format_member);

  auto* theta = app.add_subcommand("theta", "broken-line theta function");
  long theta_a = 0, theta_b = 0;
  std::string theta_g, theta_endpoint, theta_svg, theta_format = "text";
  int theta_order = 10;
  theta->add_option("--a", theta_a, "lower-left exchange entry")->required();
  theta->add_option("--b", theta_b, "upper-right exchange entry")->required();
  theta->add_option("--g", theta_g, "weight m1,m2")->required();
  theta->add_option("--order", theta_order, "truncation order")
      ->check(order_range);
  theta->add_option("--endpoint", theta_endpoint, "rational endpoint x,y");
  theta->add_option("--svg", theta_svg, "render the broken lines");
  theta->add_option("--format", theta_format, "stdout format")
      ->check(format_member);

  auto* cluster =
      app.add_subcommand("cluster", "rank-2 cluster variable computations");
  cluster->require_subcommand(1);
  auto* fpoly = cluster->add_subcommand(
      "f-poly", "g-vector and F-polynomial of the i-th variable");
  long fp_a = 0, fp_b = 0, fp_i = 0;
  int fp_order = 10;
  std::string fp_format = "text";
  fpoly->add_option("--a", fp_a)->required();
  fpoly->add_option("--b", fp_b)->required();
  fpoly->add_option("--i", fp_i, "variable index")->required();
  fpoly->add_option("--order", fp_order)->check(order_range);
  fpoly->add_option("--format", fp_format)->check(format_member);
  auto* lwall = cluster->add_subcommand(
      "limiting-wall", "limiting wall of an affine rank-2 diagram");
  long lw_a = 0, lw_b = 0;
  int lw_order = 10;
  std::string lw_format = "text";
  lwall->add_option("--a", lw_a)->required();
  lwall->add_option("--b", lw_b)->required();
  lwall->add_option("--order", lw_order)->check(order_range);
  lwall->add_option("--format", lw_format)->check(format_member);
  auto* nar = cluster->add_subcommand(
      "narayana", "alternating series with signed Narayana coefficients");
  int nar_order = 10;
  std::string nar_route = "all", nar_format = "text";
  nar->add_option("--order", nar_order)->check(order_range);
  nar->add_option("--route", nar_route, "computation route")
      ->check(CLI::IsMember({"all", "closed", "recurrence", "limit"}));
  nar->add_option("--format", nar_format)->check(format_member);

  auto* camb = app.add_subcommand("cambrian", "acyclic finite-type fans");
  camb->require_subcommand(1);
  auto* camb_build =
      camb->add_subcommand("build", "build the sortable-cone fan and dump it");
  std::string cb_b, cb_check = "none", cb_out = "fan.json", cb_format = "text";
  int cb_order = 8;
  camb_build->add_option("--b", cb_b, "acyclic exchange matrix")->required();
  camb_build->add_option("--order", cb_order)->check(order_range);
  camb_build->add_option("--check", cb_check, "run consistency checks")
      ->check(CLI::IsMember({"none", "all"}));
  camb_build->add_option("--out", cb_out, "output JSON path");
  camb_build->add_option("--format", cb_format)->check(format_member);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      return cmd_build(build_b, build_order, build_svg, build_out,
                       build_format);
    }
    if (*verify) {
      return cmd_verify(verify_name, verify_order, verify_type, verify_format);
    }
    if (*theta) {
      return cmd_theta(theta_a, theta_b, theta_g, theta_order, theta_endpoint,
                       theta_svg, theta_format);
    }
    if (*fpoly) return cmd_cluster_fpoly(fp_a, fp_b, fp_i, fp_order, fp_format);
    if (*lwall) return cmd_cluster_limiting_wall(lw_a, lw_b, lw_order, lw_format);
    if (*nar) return cmd_cluster_narayana(nar_order, nar_route, nar_format);
    if (*camb_build) {
      return cmd_cambrian_build(cb_b, cb_order, cb_check, cb_out, cb_format);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
