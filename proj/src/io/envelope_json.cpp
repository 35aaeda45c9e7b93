#include "convexreg/io/envelope_json.hpp"

#include <cmath>
#include <vector>

#include <json.hpp>

#include "convexreg/error.hpp"
#include "convexreg/io/atomic_write.hpp"
#include "convexreg/io/csv.hpp"

namespace convexreg::io {

namespace {

std::string number_list(std::span<const double> values)
{
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += (k ? ", " : "") + format_double(values[k]);
  }
  return out + "]";
}

// Rebuilds a box domain when the vertices are exactly the corners of their
// bounding box in make_box_domain's order.
geometry::PolyhedralDomain restore_domain(geometry::PointSet vertices)
{
  const std::size_t d = vertices.dim();
  if (d >= 1 && d <= 16 && vertices.size() == (std::size_t{ 1 } << d)) {
    std::vector<double> lo(vertices[0].begin(), vertices[0].end());
    std::vector<double> hi(vertices[vertices.size() - 1].begin(), vertices[vertices.size() - 1].end());
    bool box = true;
    for (std::size_t i = 0; i < vertices.size() && box; ++i) {
      for (std::size_t k = 0; k < d && box; ++k) {
        box = vertices[i][k] == ((i >> k) & 1U ? hi[k] : lo[k]) && lo[k] < hi[k];
      }
    }
    if (box) {
      return geometry::make_box_domain(lo, hi);
    }
  }
  return geometry::PolyhedralDomain::from_vertices(std::move(vertices));
}

} // namespace

std::string envelope_to_json(const geometry::ConvexEnvelope& env)
{
  std::string out = "{\"dim\": " + std::to_string(env.dim()) + ", \"pieces\": [";
  const auto& pieces = env.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    out += (i ? ", " : "");
    out += "{\"a\": " + number_list(pieces[i].gradient) + ", \"b\": " +
           format_double(pieces[i].offset) + "}";
  }
  out += "], \"domain\": {\"vertices\": [";
  const auto& v = env.domain().vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + number_list(v[i]);
  }
  out += "]}, \"shape\": \"";
  out += env.shape() == geometry::Shape::concave ? "concave" : "convex";
  out += "\"}\n";
  return out;
}

geometry::ConvexEnvelope envelope_from_json(std::string_view text)
{
  try {
    const auto j = nlohmann::json::parse(text);
    const auto d = j.at("dim").get<std::size_t>();
    if (d == 0) {
      fail(ErrorKind::parse, "envelope JSON: dim must be positive");
    }
    std::vector<geometry::AffinePiece> pieces;
    for (const auto& p : j.at("pieces")) {
      geometry::AffinePiece piece{ p.at("a").get<std::vector<double>>(), p.at("b").get<double>() };
      if (piece.gradient.size() != d) {
        fail(ErrorKind::parse, "envelope JSON: piece gradient has the wrong dimension");
      }
      pieces.push_back(std::move(piece));
    }
    geometry::PointSet vertices(d);
    for (const auto& v : j.at("domain").at("vertices")) {
      const auto coords = v.get<std::vector<double>>();
      if (coords.size() != d) {
        fail(ErrorKind::parse, "envelope JSON: domain vertex has the wrong dimension");
      }
      vertices.push_back(coords);
    }
    auto shape = geometry::Shape::convex;
    if (j.contains("shape")) {
      const auto s = j.at("shape").get<std::string>();
      if (s == "concave") {
        shape = geometry::Shape::concave;
      } else if (s != "convex") {
        fail(ErrorKind::parse, "envelope JSON: unknown shape '" + s + "'");
      }
    }
    return geometry::ConvexEnvelope(std::move(pieces), restore_domain(std::move(vertices)), shape);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("envelope JSON: ") + e.what());
  }
}

void write_envelope(const std::filesystem::path& path, const geometry::ConvexEnvelope& envelope)
{
  write_file_atomic(path, envelope_to_json(envelope));
}

geometry::ConvexEnvelope read_envelope(const std::filesystem::path& path)
{
  return envelope_from_json(read_file(path));
}

} // namespace convexreg::io
