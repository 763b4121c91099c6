// kpack: command-line front end for extremal packings on non-orientable
// hyperbolic surfaces.
//
// Exit status: 0 success, 1 usage or malformed input, 2 infeasible input or
// ineligible operation (including `verify` on a non-extremal complex),
// 3 resource cap hit, 4 internal numeric failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "kpack/kpack.hpp"

namespace {

using namespace kpack;

enum Exit { kOk = 0, kUsage = 1, kIneligible = 2, kCap = 3, kNumeric = 4 };

struct ExitWith {
  int code;
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw ExitWith{kUsage, "cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ExitWith{kUsage, "cannot write '" + path + "'"};
  out << text;
}

PolygonComplex read_complex(const std::string& path) { return parse(read_input(path)); }

json read_json(const std::string& path) {
  try {
    return json::parse(read_input(path));
  } catch (const json::exception& e) {
    throw ExitWith{kUsage, std::string("invalid JSON: ") + e.what()};
  }
}

std::string fmt17(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::string spec_text(const PackingSpec& s) { return "(" + std::to_string(s.k) + "," + std::to_string(s.g) + ")"; }

std::string report_text(const ExtremalityReport& r) {
  std::string out = r.ok ? "ok" : "not extremal";
  out += " (k,g,N) = (" + std::to_string(r.k) + "," + std::to_string(r.g) + "," + std::to_string(r.N) + ")";
  out += " chi = " + std::to_string(r.chi) + (r.orientable ? " orientable" : " non-orientable") + "\n";
  for (const auto& f : r.failures) out += "  " + std::string(to_string(f.kind)) + ": " + f.detail + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kpack: extremal disc packings on non-orientable hyperbolic surfaces"};
  app.require_subcommand(1);
  int exit_code = kOk;

  // ---- feasibility -------------------------------------------------------
  std::int64_t k = 0, g = 0, N = 0, jmax = 1;
  bool as_json = false;

  auto* bound = app.add_subcommand("bound", "radius bound cosh R = 1 / (2 sin(k pi / (6g + 6k - 12)))");
  bound->add_option("--k", k, "number of discs")->required();
  bound->add_option("--g", g, "non-orientable genus")->required();
  bound->add_flag("--json", as_json, "JSON output");
  bound->callback([&] {
    const auto p = packing_radius_bound({k, g});
    if (as_json) {
      std::cout << to_json(p).dump() << "\n";
    } else {
      std::cout << "coshR = " << fmt17(p.cosh_R) << "\nR = " << fmt17(p.R) << "\n";
      if (p.N) std::cout << "N = " << *p.N << "\nindex = " << *p.index << "\n";
      else std::cout << "N = " << p.N_num << "/" << p.N_den << " (not integral)\n";
    }
  });

  auto* feasible = app.add_subcommand("feasible", "does k divide 6(g-2)?");
  feasible->add_option("--k", k)->required();
  feasible->add_option("--g", g)->required();
  feasible->add_flag("--json", as_json);
  feasible->callback([&] {
    const PackingSpec s{k, g};
    const bool ok = is_feasible(s);
    if (as_json) {
      json j = {{"k", k}, {"g", g}, {"feasible", ok}};
      if (ok) j["N"] = cell_size(s);
      std::cout << j.dump() << "\n";
    } else if (ok) {
      std::cout << "feasible: N = " << cell_size(s) << "\n";
    } else {
      std::cout << "infeasible: " << k << " ∤ " << six_g_minus_two(g) << "\n";
    }
    if (!ok) exit_code = kIneligible;
  });

  auto* primitive = app.add_subcommand("primitive", "primitive pair with cell size N");
  primitive->add_option("--N", N)->required();
  primitive->add_flag("--json", as_json);
  primitive->callback([&] {
    const auto s = primitive_pair(N);
    if (as_json) std::cout << to_json(s).dump() << "\n";
    else std::cout << spec_text(s) << "\n";
  });

  auto* line = app.add_subcommand("line", "the pairs (k,g) with cell size N");
  line->add_option("--N", N)->required();
  line->add_option("--jmax", jmax, "number of entries")->capture_default_str();
  line->add_flag("--json", as_json);
  line->callback([&] {
    const auto L = line_LN(N, jmax);
    if (as_json) {
      json arr = json::array();
      for (const auto& s : L.entries) arr.push_back(to_json(s));
      std::cout << json{{"N", N}, {"entries", arr}}.dump() << "\n";
    } else {
      for (std::size_t j = 0; j < L.entries.size(); ++j) std::cout << j + 1 << " " << spec_text(L.entries[j]) << "\n";
    }
  });

  auto* dual = app.add_subcommand("dual", "dual extremal pairs {k, k'} with equal radius for genus g");
  dual->add_option("--g", g)->required();
  dual->add_flag("--json", as_json);
  dual->callback([&] {
    const auto pairs = dual_extremal_pairs(g);
    if (as_json) {
      json arr = json::array();
      for (const auto& [a, b] : pairs) arr.push_back({a, b});
      std::cout << arr.dump() << "\n";
    } else {
      for (const auto& [a, b] : pairs) std::cout << a << " " << b << "\n";
    }
  });

  auto* unique = app.add_subcommand("unique", "uniqueness class of the extremal surface");
  unique->add_option("--k", k)->required();
  unique->add_option("--g", g)->required();
  unique->add_flag("--json", as_json);
  unique->callback([&] {
    const auto u = uniqueness_class({k, g});
    if (as_json) std::cout << json{{"k", k}, {"g", g}, {"uniqueness", to_string(u)}}.dump() << "\n";
    else std::cout << to_string(u) << "\n";
  });

  // ---- construction ------------------------------------------------------
  std::string file = "-", output;
  auto* build = app.add_subcommand("build", "primitive extremal complex with cell size N (grafting)");
  build->add_option("--N", N)->required();
  build->add_option("-o,--output", output, "output file (default stdout)");
  build->callback([&] { write_output(output, serialize(build_primitive(N))); });

  auto* realize_cmd = app.add_subcommand("realize", "extremal complex for (k,g)");
  realize_cmd->add_option("--k", k)->required();
  realize_cmd->add_option("--g", g)->required();
  realize_cmd->add_option("-o,--output", output);
  realize_cmd->callback([&] { write_output(output, serialize(realize_spec({k, g}))); });

  std::string catalog_name;
  auto* catalog = app.add_subcommand("catalog", "print a seed complex (X7, X8, X9, X12) or list them");
  catalog->add_option("NAME", catalog_name);
  catalog->add_option("-o,--output", output);
  catalog->callback([&] {
    if (catalog_name.empty()) {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
    } else {
      write_output(output, serialize(catalog_complex(catalog_name)));
    }
  });

  auto* verify = app.add_subcommand("verify", "certify a complex as an extremal packing; exit 0 iff ok");
  verify->add_option("FILE", file, "complex file, - for stdin")->capture_default_str();
  verify->add_flag("--json", as_json);
  verify->callback([&] {
    const auto r = verify_extremal(read_complex(file));
    std::cout << (as_json ? to_json(r).dump() + "\n" : report_text(r));
    if (!r.ok) exit_code = kIneligible;
  });

  std::vector<std::string> variants;
  int site = 0;
  bool list_sites = false;
  auto* graft = app.add_subcommand("graft", "apply an elementary graft (two variants for 2 or 6 polygons)");
  graft->add_option("FILE", file)->capture_default_str();
  graft->add_option("--variant", variants, "EG1..EG4; repeat for two-site steps")->required();
  graft->add_option("--site", site, "index among the eligible steps")->capture_default_str();
  graft->add_flag("--list", list_sites, "list eligible steps instead of grafting");
  graft->add_option("-o,--output", output);
  graft->callback([&] {
    const auto c = read_complex(file);
    std::vector<GraftVariant> vs;
    for (const auto& v : variants) vs.push_back(parse_variant(v));
    const auto steps = eligible_steps(c, vs);
    if (list_sites) {
      for (std::size_t i = 0; i < steps.size(); ++i) {
        std::cout << i;
        for (const auto& s : steps[i].sites) {
          std::cout << " [" << to_string(s.variant) << " polygons";
          for (int p : s.polygons()) std::cout << " " << p;
          std::cout << "]";
        }
        std::cout << "\n";
      }
      return;
    }
    if (site < 0 || static_cast<std::size_t>(site) >= steps.size()) {
      throw PreconditionError("no eligible step with index " + std::to_string(site) + " (" +
                              std::to_string(steps.size()) + " eligible)");
    }
    write_output(output, serialize(apply_step(c, steps[static_cast<std::size_t>(site)])));
  });

  auto* dcover = app.add_subcommand("double-cover", "orientation double cover");
  dcover->add_option("FILE", file)->capture_default_str();
  dcover->add_option("-o,--output", output);
  dcover->callback([&] { write_output(output, serialize(orientation_double_cover(read_complex(file)))); });

  int degree = 2;
  std::vector<int> voltages;
  auto* ccover = app.add_subcommand("cyclic-cover", "n-sheeted cyclic cover (voltages searched unless given)");
  ccover->add_option("FILE", file)->capture_default_str();
  ccover->add_option("--n", degree, "number of sheets")->required();
  ccover->add_option("--voltages", voltages, "voltage of each label 1..E of the file's complex");
  ccover->add_option("-o,--output", output);
  ccover->callback([&] {
    const auto c = read_complex(file);
    if (degree < 1) throw DomainError("--n must be >= 1");
    if (voltages.empty()) {
      write_output(output, serialize(find_nonorientable_cyclic_cover(c, degree)));
    } else {
      write_output(output, serialize(cyclic_cover(c, {degree, voltages})));
    }
  });

  // ---- groups ------------------------------------------------------------
  TriangleParams tri{2, 3, 7};
  int index = 0;
  bool torsion_free = false, proper = false, nonorientable = false;
  std::size_t max_results = 0;
  auto* enumerate = app.add_subcommand("enumerate", "subgroups of the extended triangle group of given index");
  enumerate->add_option("--p", tri.p)->required();
  enumerate->add_option("--q", tri.q)->required();
  enumerate->add_option("--r", tri.r)->required();
  enumerate->add_option("--index", index)->required();
  enumerate->add_flag("--torsion-free", torsion_free);
  enumerate->add_flag("--proper", proper, "not contained in the orientation-preserving subgroup");
  enumerate->add_flag("--nonorientable", nonorientable, "keep records with non-orientable quotient");
  enumerate->add_option("--max", max_results, "stop after this many classes (0 = all)");
  enumerate->add_option("-o,--output", output);
  enumerate->callback([&] {
    json arr = json::array();
    for (const auto& rec : low_index_subgroups(tri, index, torsion_free, proper, max_results)) {
      if (nonorientable && rec.quotient_orientable) continue;
      arr.push_back(to_json(rec));
    }
    write_output(output, arr.dump(1) + "\n");
  });

  auto* to_group = app.add_subcommand("to-group", "subgroup record of an extremal complex");
  to_group->add_option("FILE", file)->capture_default_str();
  to_group->add_option("-o,--output", output);
  to_group->callback([&] { write_output(output, to_json(complex_to_subgroup(read_complex(file))).dump(1) + "\n"); });

  auto* from_group = app.add_subcommand("from-group", "complex of a torsion-free subgroup record of (2,3,N) or (3,3,r)");
  from_group->add_option("RECORD", file, "record JSON (an object, or an array whose first element is used)")
      ->capture_default_str();
  from_group->add_option("-o,--output", output);
  from_group->callback([&] {
    json j = read_json(file);
    if (j.is_array()) {
      if (j.empty()) throw ExitWith{kUsage, "empty record array"};
      j = j.front();
    }
    auto rec = subgroup_from_json(j);
    // (3,3,r) records live in the index-2 subgroup of (2,3,2r); read them there
    if (rec.triangle.p == 3 && rec.triangle.q == 3) rec = embed_in_double_triangle(rec);
    write_output(output, serialize(subgroup_to_complex(rec)));
  });

  // ---- geometry ----------------------------------------------------------
  std::string layout_path;
  auto* render = app.add_subcommand("render", "Poincare disk picture of a complex");
  render->add_option("FILE", file)->capture_default_str();
  render->add_option("-o,--output", output, "SVG file (default stdout)");
  render->add_option("--layout", layout_path, "also write the layout as JSON");
  render->callback([&] {
    const auto L = realize(read_complex(file));
    const auto h = holonomy_check(L);
    if (h.max_residual > kGeometryTolerance) {
      throw NumericError("holonomy residual " + std::to_string(h.max_residual) + " exceeds tolerance");
    }
    write_output(output, render_svg(L));
    if (!layout_path.empty()) write_output(layout_path, to_json(L).dump(1) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const ExitWith& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return kIneligible;
  } catch (const PreconditionError& e) {
    std::cerr << "ineligible: " << e.what() << "\n";
    return kIneligible;
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return kIneligible;
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const ComplexError& e) {
    std::cerr << "malformed complex: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return exit_code;
}
