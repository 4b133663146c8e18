// Command-line front end for file-based conversions between ReLU nets, PWA
// functions and mp-LPs.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relupwa/bounds.hpp"
#include "relupwa/errors.hpp"
#include "relupwa/inverse_mplp.hpp"
#include "relupwa/io.hpp"
#include "relupwa/regions.hpp"
#include "relupwa/sampling.hpp"
#include "relupwa/synthesis.hpp"

using namespace relupwa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError(std::string("bad number '") + item + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

// "lo,hi" applies to every axis; "lo1,hi1,lo2,hi2,..." gives one pair per axis.
Polyhedron parse_box(const std::string& text, Eigen::Index dim) {
  const auto v = parse_list(text, "--box");
  Eigen::VectorXd lo(dim), hi(dim);
  if (v.size() == 2) {
    lo.setConstant(v[0]);
    hi.setConstant(v[1]);
  } else if (v.size() == static_cast<std::size_t>(2 * dim)) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      lo[j] = v[static_cast<std::size_t>(2 * j)];
      hi[j] = v[static_cast<std::size_t>(2 * j + 1)];
    }
  } else {
    throw UsageError("--box needs lo,hi or one lo,hi pair per input (" + std::to_string(dim) + ")");
  }
  if ((lo.array() >= hi.array()).any()) throw UsageError("--box needs lo < hi on every axis");
  return Polyhedron::box(lo, hi);
}

Eigen::VectorXd parse_point(const std::string& text) {
  const auto v = parse_list(text, "--at");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string join(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

EnumerationOptions enumeration_options() {
  EnumerationOptions opt;
  if (const char* cap = std::getenv("RELU_PWA_REGION_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || v == 0) throw UsageError("RELU_PWA_REGION_CAP must be a positive integer");
    opt.region_cap = static_cast<std::size_t>(v);
  }
  return opt;
}

// Any supported document evaluated as a scalar-or-vector function.
struct AnyFunction {
  FileKind kind;
  std::optional<ReluNet> net;
  std::optional<PwaFunction> pwa;
  std::optional<MaxAffine> maxaffine;
  std::optional<DcPair> dc;

  static AnyFunction load(const std::string& path) {
    const std::string text = read_text_file(path);
    AnyFunction f{detect_kind(text), {}, {}, {}, {}};
    switch (f.kind) {
      case FileKind::Net: f.net = read_net_json(text); break;
      case FileKind::Pwa: f.pwa = read_pwa_json(text); break;
      case FileKind::MaxAffine: f.maxaffine = read_maxaffine_json(text); break;
      case FileKind::DcPair: f.dc = read_dc_json(text); break;
    }
    return f;
  }

  Eigen::Index input_dim() const {
    if (net) return net->input_dim();
    if (pwa) return pwa->input_dim();
    if (maxaffine) return maxaffine->input_dim();
    return dc->input_dim();
  }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    if (net) return eval_net(*net, x);
    if (pwa) return eval_pwa(*pwa, x);
    if (maxaffine) return Eigen::VectorXd::Constant(1, (*maxaffine)(x));
    return Eigen::VectorXd::Constant(1, (*dc)(x));
  }
};

void print_census(const ReluNet& net, std::size_t regions) {
  Architecture arch{static_cast<int>(net.input_dim()), {}};
  for (auto w : net.widths()) arch.widths.push_back(static_cast<int>(w));
  std::string widths;
  for (std::size_t l = 0; l < arch.widths.size(); ++l) widths += (l ? "," : "") + std::to_string(arch.widths[l]);
  std::string lower = "n/a", upper = "n/a";
  if (arch.meets_width_hypothesis()) {
    lower = lower_bound(arch).str();
    upper = upper_bound(arch).str();
  }
  std::cout << "regions=" << regions << " input_dim=" << arch.input_dim << " widths=" << widths
            << " lower_bound=" << lower << " upper_bound=" << upper << " naive_bound=" << naive_bound(arch).str()
            << "\n";
}

int cmd_net2pwa(const std::string& in, const std::string& box_text, const std::string& mode, std::size_t samples,
                std::uint64_t seed, const std::string& out) {
  const ReluNet net = read_net_json(read_text_file(in));
  const Polyhedron box = parse_box(box_text, net.input_dim());
  std::vector<RegionRecord> records;
  if (mode == "exact") {
    records = enumerate_exact(net, box, enumeration_options());
  } else {
    records = sample_identify(net, box, samples, seed);
    attach_regions(records, net, box);
  }
  std::vector<PwaPiece> pieces;
  for (const auto& r : records) pieces.push_back({r.region->without_redundant(), r.map.u, r.map.c});
  write_text_file_atomic(out, write_pwa_json(PwaFunction(box, std::move(pieces))));
  print_census(net, records.size());
  return kExitOk;
}

int cmd_pwa2net(const std::string& in, const std::string& box_text, bool dc_flag, const std::string& out) {
  const AnyFunction f = AnyFunction::load(in);
  auto box_for = [&](std::optional<Polyhedron> fallback) {
    if (!box_text.empty()) return parse_box(box_text, f.input_dim());
    if (fallback) {
      if (auto bb = fallback->bounding_box()) return Polyhedron::box(bb->first, bb->second);
    }
    throw UsageError("--box is required for this input");
  };
  std::optional<ReluNet> net;
  switch (f.kind) {
    case FileKind::MaxAffine: net = maxaffine_to_relu(*f.maxaffine, box_for(std::nullopt)); break;
    case FileKind::DcPair: net = dc_to_relu(*f.dc, box_for(std::nullopt)); break;
    case FileKind::Pwa: {
      if (f.pwa->output_dim() != 1) throw UsageError("pwa2net handles scalar PWA functions");
      const Polyhedron box = box_for(f.pwa->domain());
      if (auto g = convex_maxaffine_of(*f.pwa)) {
        net = maxaffine_to_relu(*g, box);
      } else if (!dc_flag) {
        throw UsageError("input is not convex; pass --dc to decompose it first");
      } else if (f.input_dim() != 1) {
        throw UsageError("--dc decomposition is only available for 1-D inputs");
      } else {
        net = dc_to_relu(dc_decompose_1d(pwa1d_from_pwa(*f.pwa)), box);
      }
      break;
    }
    case FileKind::Net: throw UsageError("input is already a net");
  }
  write_text_file_atomic(out, write_net_json(*net));
  std::cout << "depth=" << net->depth() << " widths=";
  for (std::size_t l = 0; l < net->depth(); ++l) std::cout << (l ? "," : "") << net->hidden(l).W.rows();
  std::cout << " params=" << param_count(*net) << "\n";
  return kExitOk;
}

int cmd_pwa2mplp(const std::string& in, const std::string& box_text, const std::string& out) {
  const AnyFunction f = AnyFunction::load(in);
  std::optional<DcPair> pair;
  std::optional<Polyhedron> domain;
  switch (f.kind) {
    case FileKind::Pwa: {
      if (f.pwa->output_dim() != 1) throw UsageError("pwa2mplp handles scalar PWA functions");
      if (f.input_dim() != 1) throw UsageError("PWA input must be 1-D; supply n-D functions as a DC pair");
      pair = dc_decompose_1d(pwa1d_from_pwa(*f.pwa));
      domain = f.pwa->domain();
      break;
    }
    case FileKind::DcPair: pair = *f.dc; break;
    case FileKind::MaxAffine:
      pair = DcPair{*f.maxaffine, MaxAffine(Eigen::MatrixXd::Zero(1, f.input_dim()), Eigen::VectorXd::Zero(1))};
      break;
    case FileKind::Net: throw UsageError("pwa2mplp takes a PWA, max-affine or DC-pair file");
  }
  if (!box_text.empty()) domain = parse_box(box_text, f.input_dim());
  if (!domain) throw UsageError("--box is required for this input");
  const MpLP mp = dc_to_mplp(*pair, *domain);
  write_text_file_atomic(out, write_mplp_text(mp));
  std::cout << "decisions=" << mp.decision_dim() << " constraints=" << mp.num_constraints() << "\n";
  return kExitOk;
}

int cmd_bounds(const std::string& arch_text) {
  const Architecture arch = Architecture::parse(arch_text);
  if (arch.meets_width_hypothesis()) {
    std::cout << "lower " << lower_bound(arch).str() << "\n";
    std::cout << "upper " << upper_bound(arch).str() << "\n";
  } else {
    std::cout << "lower n/a (needs every n_l >= n0)\n";
    std::cout << "upper n/a (needs every n_l >= n0)\n";
  }
  std::cout << "naive " << naive_bound(arch).str() << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& net_path, const std::string& pwa_path, const std::string& mplp_path,
               std::size_t samples, double tol, std::uint64_t seed) {
  const int given = !net_path.empty() + !pwa_path.empty() + !mplp_path.empty();
  if (given < 2) throw UsageError("verify needs at least two of --net, --pwa, --mplp");
  std::optional<ReluNet> net;
  std::optional<PwaFunction> pwa;
  std::optional<MpLP> mp;
  if (!net_path.empty()) net = read_net_json(read_text_file(net_path));
  if (!pwa_path.empty()) pwa = read_pwa_json(read_text_file(pwa_path));
  if (!mplp_path.empty()) mp = read_mplp_text(read_text_file(mplp_path));

  bool ok = true;
  auto report = [&](const char* what, double err, bool pass, const std::string& extra = "") {
    std::cout << what << " max_error=" << fmt(err) << extra << " " << (pass ? "PASS" : "FAIL") << "\n";
    ok = ok && pass;
  };
  if (net && pwa) {
    if (net->input_dim() != pwa->input_dim() || net->output_dim() != pwa->output_dim())
      throw DimensionError("net and PWA function have different shapes");
    const auto bb = pwa->domain().bounding_box();
    if (!bb) throw UsageError("PWA domain must be bounded");
    double err = 0;
    for (const auto& x : box_samples(bb->first, bb->second, samples, seed)) {
      if (!pwa->domain().contains(x)) continue;
      err = std::max(err, (eval_net(*net, x) - eval_pwa(*pwa, x)).cwiseAbs().maxCoeff());
    }
    report("net-vs-pwa", err, err <= tol);
  }
  auto inverse = [&](const char* what, const InverseReport& r) {
    report(what, r.max_error, r.pass, " value_convex=" + std::string(r.value_convex ? "yes" : "no"));
  };
  if (mp && pwa) inverse("mplp-vs-pwa", verify_inverse(*mp, *pwa, samples, tol, seed));
  if (mp && net) inverse("mplp-vs-net", verify_inverse(*mp, *net, samples, tol, seed));
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_eval(const std::string& net_path, const std::string& pwa_path, const std::string& at) {
  if (net_path.empty() == pwa_path.empty()) throw UsageError("eval needs exactly one of --net, --pwa");
  const AnyFunction f = AnyFunction::load(net_path.empty() ? pwa_path : net_path);
  if (!net_path.empty() && f.kind != FileKind::Net) throw UsageError("--net file is not a net");
  if (!pwa_path.empty() && f.kind == FileKind::Net) throw UsageError("--pwa file is a net");
  std::cout << join(f(parse_point(at))) << "\n";
  return kExitOk;
}

int cmd_plotdata(const std::string& in, const std::string& box_text, std::size_t grid, const std::string& out) {
  const AnyFunction f = AnyFunction::load(in);
  const auto n = f.input_dim();
  if (n > 2) throw UsageError("plotdata handles 1-D and 2-D inputs");
  if (grid < 2) throw UsageError("--grid must be at least 2");
  const auto bb = parse_box(box_text, n).as_box();
  const Eigen::VectorXd lo = bb->first, hi = bb->second;
  std::string csv = n == 1 ? "x" : "x1,x2";
  const Eigen::Index outs = f(lo).size();
  csv += outs == 1 ? ",f\n" : "";
  if (outs > 1) {
    for (Eigen::Index k = 0; k < outs; ++k) csv += ",f" + std::to_string(k + 1);
    csv += "\n";
  }
  const std::size_t rows = n == 1 ? 1 : grid;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < grid; ++c) {
      Eigen::VectorXd x(n);
      const double tc = static_cast<double>(c) / static_cast<double>(grid - 1);
      x[0] = lo[0] + (hi[0] - lo[0]) * tc;
      if (n == 2) x[1] = lo[1] + (hi[1] - lo[1]) * static_cast<double>(r) / static_cast<double>(grid - 1);
      csv += join(x) + "," + join(f(x)) + "\n";
    }
  write_text_file_atomic(out, csv);
  return kExitOk;
}

void print_error(const std::string& kind, const std::string& message, std::optional<std::size_t> line = {}) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  if (line) j["line"] = *line;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert between ReLU networks, piecewise-affine functions and multiparametric LPs."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "relupwa 1.0");

  std::string in, out, box, mode = "exact", arch, net, pwa, mplp, at;
  std::size_t samples = 100000, verify_samples = 1000, grid = 201;
  std::uint64_t seed = 42;
  double tol = 1e-7;
  bool dc = false;

  auto* net2pwa = app.add_subcommand("net2pwa", "Linear regions of a net as a PWA file");
  net2pwa->add_option("net", in, "Net JSON file")->required();
  net2pwa->add_option("--box", box, "Bounding box lo,hi (default -10,10)");
  net2pwa->add_option("--mode", mode, "exact enumeration or sample identification")
      ->check(CLI::IsMember({"sample", "exact"}));
  net2pwa->add_option("--samples", samples, "Number of samples in sample mode")->check(CLI::PositiveNumber);
  net2pwa->add_option("--seed", seed, "Sampling seed");
  net2pwa->add_option("-o,--output", out, "Output PWA file")->required();

  auto* pwa2net = app.add_subcommand("pwa2net", "Exact ReLU net for a PWA, max-affine or DC-pair file");
  pwa2net->add_option("input", in, "Input file")->required();
  pwa2net->add_option("--box", box, "Box lo,hi (defaults to the PWA domain)");
  pwa2net->add_flag("--dc", dc, "Decompose a non-convex 1-D function into a DC pair first");
  pwa2net->add_option("-o,--output", out, "Output net file")->required();

  auto* pwa2mplp = app.add_subcommand("pwa2mplp", "mp-LP whose solution reproduces a PWA function");
  pwa2mplp->add_option("input", in, "1-D PWA, max-affine or DC-pair file")->required();
  pwa2mplp->add_option("--box", box, "Parameter domain lo,hi (defaults to the PWA domain)");
  pwa2mplp->add_option("-o,--output", out, "Output mp-LP text file")->required();

  auto* bounds = app.add_subcommand("bounds", "Region-count bounds for an architecture");
  bounds->add_option("--arch", arch, "n0:n1,...,nL")->required();

  auto* verify = app.add_subcommand("verify", "Cross-check two or three representations");
  verify->add_option("--net", net, "Net file");
  verify->add_option("--pwa", pwa, "PWA file");
  verify->add_option("--mplp", mplp, "mp-LP text file");
  verify->add_option("--samples", verify_samples, "Number of sample points")->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "Absolute tolerance");
  verify->add_option("--seed", seed, "Sampling seed");

  auto* eval = app.add_subcommand("eval", "Evaluate a net or PWA file at a point");
  eval->add_option("--net", net, "Net file");
  eval->add_option("--pwa", pwa, "PWA, max-affine or DC-pair file");
  eval->add_option("--at", at, "x1,x2,...")->required();

  auto* plot = app.add_subcommand("plotdata", "Grid samples as CSV for external plotting");
  plot->add_option("input", in, "Any supported file")->required();
  plot->add_option("--box", box, "Box lo,hi")->required();
  plot->add_option("--grid", grid, "Points per axis");
  plot->add_option("-o,--output", out, "Output CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (*net2pwa) return cmd_net2pwa(in, box.empty() ? "-10,10" : box, mode, samples, seed, out);
    if (*pwa2net) return cmd_pwa2net(in, box, dc, out);
    if (*pwa2mplp) return cmd_pwa2mplp(in, box, out);
    if (*bounds) return cmd_bounds(arch);
    if (*verify) return cmd_verify(net, pwa, mplp, verify_samples, tol, seed);
    if (*eval) return cmd_eval(net, pwa, at);
    if (*plot) return cmd_plotdata(in, box, grid, out);
  } catch (const ParseError& e) {
    print_error(e.kind(), e.what(), e.line());
    return kExitUsage;
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
