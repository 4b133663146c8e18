#include "relupwa/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "json_locate.hpp"

namespace relupwa {

using nlohmann::json;
using detail::JsonPath;

namespace {

// Parsed document plus the source text, for error lines.
class Document {
 public:
  explicit Document(const std::string& text) : text_(text) {
    try {
      root_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), detail::line_of_offset(text_, e.byte));
    }
  }

  const json& root() const { return root_; }

  [[noreturn]] void fail(const JsonPath& path, const std::string& msg) const {
    throw ParseError(detail::to_string(path) + ": " + msg, detail::json_line_of(text_, path));
  }

  const json& at(const json& parent, const JsonPath& path, const std::string& key) const {
    if (!parent.is_object()) fail(path, "expected an object");
    const auto it = parent.find(key);
    if (it == parent.end()) fail(path, "missing field \"" + key + "\"");
    return *it;
  }

  double number(const json& v, const JsonPath& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  Eigen::VectorXd vector(const json& v, const JsonPath& path) const {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = number(v[i], with(path, i));
    return out;
  }

  Eigen::MatrixXd matrix(const json& v, const JsonPath& path) const {
    if (!v.is_array()) fail(path, "expected an array of rows");
    if (v.empty()) fail(path, "matrix has no rows");
    const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
    Eigen::MatrixXd out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < v.size(); ++r) {
      const auto row_path = with(path, r);
      const Eigen::VectorXd row = vector(v[r], row_path);
      if (static_cast<std::size_t>(row.size()) != cols)
        fail(row_path, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
      out.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return out;
  }

  static JsonPath with(JsonPath path, detail::JsonPathStep step) {
    path.push_back(std::move(step));
    return path;
  }

 private:
  const std::string& text_;
  json root_;
};

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return a;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json affine_list(const MaxAffine& g) {
  json list = json::array();
  for (Eigen::Index i = 0; i < g.size(); ++i)
    list.push_back({{"u", to_json(Eigen::VectorXd(g.slopes.row(i).transpose()))}, {"c", g.offsets[i]}});
  return list;
}

MaxAffine read_affine_list(const Document& doc, const json& v, const JsonPath& path) {
  if (!v.is_array() || v.empty()) doc.fail(path, "expected a nonempty array of {\"u\", \"c\"} pieces");
  Eigen::MatrixXd slopes;
  Eigen::VectorXd offsets(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto p = Document::with(path, i);
    const Eigen::VectorXd u = doc.vector(doc.at(v[i], p, "u"), Document::with(p, "u"));
    if (i == 0) slopes.resize(static_cast<Eigen::Index>(v.size()), u.size());
    if (u.size() != slopes.cols() || u.size() == 0)
      doc.fail(Document::with(p, "u"), "slope has " + std::to_string(u.size()) + " entries, expected " +
                                           std::to_string(slopes.cols()));
    slopes.row(static_cast<Eigen::Index>(i)) = u.transpose();
    offsets[static_cast<Eigen::Index>(i)] = doc.number(doc.at(v[i], p, "c"), Document::with(p, "c"));
  }
  return MaxAffine(std::move(slopes), std::move(offsets));
}

Polyhedron read_polyhedron(const Document& doc, const json& v, const JsonPath& path, Eigen::Index dim) {
  const auto a_path = Document::with(path, "A");
  const auto b_path = Document::with(path, "b");
  const Eigen::MatrixXd A = doc.matrix(doc.at(v, path, "A"), a_path);
  const Eigen::VectorXd b = doc.vector(doc.at(v, path, "b"), b_path);
  if (dim >= 0 && A.cols() != dim)
    doc.fail(a_path, "constraints have " + std::to_string(A.cols()) + " columns, expected " + std::to_string(dim));
  if (A.rows() != b.size())
    doc.fail(b_path, "has " + std::to_string(b.size()) + " entries for " + std::to_string(A.rows()) + " rows");
  if (!A.allFinite() || !b.allFinite()) doc.fail(path, "non-finite entries");
  return Polyhedron(A, b);
}

json polyhedron_json(const Polyhedron& p) { return {{"A", to_json(p.A())}, {"b", to_json(p.b())}}; }

}  // namespace

ReluNet read_net_json(const std::string& text) {
  Document doc(text);
  const json& root = doc.root();
  const JsonPath top;
  const json& n0v = doc.at(root, top, "input_dim");
  if (!n0v.is_number_integer() || n0v.get<long>() <= 0) doc.fail({"input_dim"}, "must be a positive integer");
  const auto n0 = static_cast<Eigen::Index>(n0v.get<long>());

  const json& hidden = doc.at(root, top, "hidden");
  if (!hidden.is_array() || hidden.empty()) doc.fail({"hidden"}, "expected a nonempty array of layers");
  auto read_layer = [&](const json& v, const JsonPath& path, Eigen::Index in_dim, bool bias_optional) {
    const auto w_path = Document::with(path, "W");
    const auto b_path = Document::with(path, "b");
    Layer layer;
    layer.W = doc.matrix(doc.at(v, path, "W"), w_path);
    if (layer.W.cols() != in_dim)
      doc.fail(Document::with(w_path, std::size_t{0}),
               "has " + std::to_string(layer.W.cols()) + " columns but the layer input has dimension " +
                   std::to_string(in_dim));
    if (bias_optional && v.is_object() && !v.contains("b")) {
      layer.b = Eigen::VectorXd::Zero(layer.W.rows());
    } else {
      layer.b = doc.vector(doc.at(v, path, "b"), b_path);
      if (layer.b.size() != layer.W.rows())
        doc.fail(b_path, "has " + std::to_string(layer.b.size()) + " entries but W has " +
                             std::to_string(layer.W.rows()) + " rows");
    }
    if (!layer.W.allFinite() || !layer.b.allFinite()) doc.fail(path, "non-finite entries");
    return layer;
  };

  std::vector<Layer> layers;
  Eigen::Index prev = n0;
  for (std::size_t l = 0; l < hidden.size(); ++l) {
    layers.push_back(read_layer(hidden[l], {"hidden", l}, prev, false));
    prev = layers.back().out_dim();
  }
  Layer output = read_layer(doc.at(root, top, "output"), {"output"}, prev, true);
  return ReluNet(n0, std::move(layers), std::move(output));
}

std::string write_net_json(const ReluNet& net) {
  json hidden = json::array();
  for (const auto& layer : net.hidden()) hidden.push_back({{"W", to_json(layer.W)}, {"b", to_json(layer.b)}});
  json root = {{"input_dim", net.input_dim()},
               {"hidden", hidden},
               {"output", {{"W", to_json(net.output().W)}, {"b", to_json(net.output().b)}}}};
  return dump(root);
}

PwaFunction read_pwa_json(const std::string& text) {
  Document doc(text);
  const json& root = doc.root();
  const Polyhedron domain = read_polyhedron(doc, doc.at(root, {}, "domain"), {"domain"}, -1);
  const Eigen::Index n = domain.dim();
  const json& pieces = doc.at(root, {}, "pieces");
  if (!pieces.is_array() || pieces.empty()) doc.fail({"pieces"}, "expected a nonempty array");
  std::vector<PwaPiece> out;
  Eigen::Index outputs = -1;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const JsonPath p{"pieces", i};
    PwaPiece piece{read_polyhedron(doc, pieces[i], p, n), {}, {}};
    const json& u = doc.at(pieces[i], p, "u");
    const json& c = doc.at(pieces[i], p, "c");
    const auto u_path = Document::with(p, "u");
    if (!u.empty() && u.is_array() && u[0].is_array()) {
      piece.u = doc.matrix(u, u_path);
      piece.c = doc.vector(c, Document::with(p, "c"));
    } else {
      piece.u = doc.vector(u, u_path).transpose();
      piece.c = Eigen::VectorXd::Constant(1, doc.number(c, Document::with(p, "c")));
    }
    if (piece.u.cols() != n)
      doc.fail(u_path, "has " + std::to_string(piece.u.cols()) + " inputs, domain has dimension " + std::to_string(n));
    if (piece.c.size() != piece.u.rows()) doc.fail(Document::with(p, "c"), "length differs from rows of u");
    if (outputs >= 0 && piece.u.rows() != outputs) doc.fail(u_path, "output dimension differs from piece 0");
    outputs = piece.u.rows();
    out.push_back(std::move(piece));
  }
  return PwaFunction(domain, std::move(out));
}

std::string write_pwa_json(const PwaFunction& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces()) {
    json piece = polyhedron_json(p.region);
    if (p.u.rows() == 1) {
      piece["u"] = to_json(Eigen::VectorXd(p.u.row(0).transpose()));
      piece["c"] = p.c[0];
    } else {
      piece["u"] = to_json(p.u);
      piece["c"] = to_json(p.c);
    }
    pieces.push_back(std::move(piece));
  }
  return dump({{"domain", polyhedron_json(f.domain())}, {"pieces", pieces}});
}

MaxAffine read_maxaffine_json(const std::string& text) {
  Document doc(text);
  return read_affine_list(doc, doc.at(doc.root(), {}, "maxaffine"), {"maxaffine"});
}

std::string write_maxaffine_json(const MaxAffine& g) { return dump({{"maxaffine", affine_list(g)}}); }

DcPair read_dc_json(const std::string& text) {
  Document doc(text);
  DcPair pair{read_affine_list(doc, doc.at(doc.root(), {}, "gamma"), {"gamma"}),
              read_affine_list(doc, doc.at(doc.root(), {}, "eta"), {"eta"})};
  if (pair.gamma.input_dim() != pair.eta.input_dim())
    doc.fail({"eta", std::size_t{0}, "u"}, "input dimension differs from gamma");
  return pair;
}

std::string write_dc_json(const DcPair& pair) {
  return dump({{"gamma", affine_list(pair.gamma)}, {"eta", affine_list(pair.eta)}});
}

FileKind detect_kind(const std::string& text) {
  Document doc(text);
  const json& r = doc.root();
  if (!r.is_object()) doc.fail({}, "expected a JSON object");
  if (r.contains("hidden")) return FileKind::Net;
  if (r.contains("pieces") && r.contains("domain")) return FileKind::Pwa;
  if (r.contains("maxaffine")) return FileKind::MaxAffine;
  if (r.contains("gamma") && r.contains("eta")) return FileKind::DcPair;
  throw ParseError("unrecognized file: expected a net, PWA, max-affine or DC-pair document", 1);
}

const char* to_string(FileKind kind) {
  switch (kind) {
    case FileKind::Net: return "net";
    case FileKind::Pwa: return "pwa";
    case FileKind::MaxAffine: return "maxaffine";
    case FileKind::DcPair: return "dcpair";
  }
  return "?";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw UsageError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot move output into place at '" + path + "': " + ec.message());
  }
}

}  // namespace relupwa
