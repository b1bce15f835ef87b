#include "threadkit/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace threadkit {

using nlohmann::json;

ChainDocument parse_document(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("document must be a JSON object");

  ChainDocument doc;
  if (!j.contains("schema") || !j["schema"].is_number_integer()) throw SchemaError("missing integer field \"schema\"");
  doc.schema = j["schema"].get<int>();
  if (doc.schema != kSchemaVersion) throw SchemaError("unsupported schema version " + std::to_string(doc.schema));
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) throw SchemaError("missing integer field \"dimension\"");
  doc.dimension = j["dimension"].get<int>();
  if (doc.dimension != 2 && doc.dimension != 3) throw SchemaError("dimension must be 2 or 3");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("\"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw SchemaError("missing array field \"vertices\"");

  const auto& vs = j["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& v = vs[i];
    const std::string where = "vertex " + std::to_string(i);
    if (!v.is_array() || v.size() != static_cast<std::size_t>(doc.dimension))
      throw SchemaError(where + ": expected " + std::to_string(doc.dimension) + " coordinates");
    std::vector<Scalar> coords;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_string()) throw SchemaError(where + ": coordinates must be decimal strings");
      try {
        coords.push_back(parse_scalar(v[k].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(where + ": " + e.what());
      }
    }
    doc.vertices.push_back(std::move(coords));
  }
  return doc;
}

std::string format_document(const ChainDocument& doc) {
  json j = json::object();
  j["schema"] = doc.schema;
  j["dimension"] = doc.dimension;
  if (doc.name) j["name"] = *doc.name;
  j["vertices"] = json::array();
  for (const auto& v : doc.vertices) {
    json row = json::array();
    for (const auto& s : v) row.push_back(format_scalar(s));
    j["vertices"].push_back(row);
  }
  // One vertex per line keeps long chains diffable.
  std::ostringstream out;
  out << "{\n  \"schema\": " << j["schema"].dump() << ",\n  \"dimension\": " << j["dimension"].dump() << ",\n";
  if (doc.name) out << "  \"name\": " << j["name"].dump() << ",\n";
  out << "  \"vertices\": [";
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) out << (i ? ",\n    " : "\n    ") << j["vertices"][i].dump();
  out << (j["vertices"].empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

ChainDocument to_document(const Chain2& c, std::optional<std::string> name) {
  ChainDocument doc;
  doc.dimension = 2;
  doc.name = std::move(name);
  for (const auto& p : c.vertices()) doc.vertices.push_back({p.x, p.y});
  return doc;
}

ChainDocument to_document(const Chain3& c, std::optional<std::string> name) {
  ChainDocument doc;
  doc.dimension = 3;
  doc.name = std::move(name);
  for (const auto& p : c.vertices()) doc.vertices.push_back({p.x, p.y, p.z});
  return doc;
}

AnyChain to_chain(const ChainDocument& doc) {
  if (doc.dimension == 2) {
    std::vector<Point2> v;
    for (const auto& r : doc.vertices) v.push_back({r[0], r[1]});
    return validate_chain(std::move(v));
  }
  std::vector<Point3> v;
  for (const auto& r : doc.vertices) v.push_back({r[0], r[1], r[2]});
  return validate_chain3(std::move(v));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

AnyChain parse_chain(const std::filesystem::path& path) { return to_chain(parse_document(read_file(path))); }

void write_chain(const Chain2& c, const std::filesystem::path& path, std::optional<std::string> name) {
  write_file_atomic(path, format_document(to_document(c, std::move(name))));
}

void write_chain(const Chain3& c, const std::filesystem::path& path, std::optional<std::string> name) {
  write_file_atomic(path, format_document(to_document(c, std::move(name))));
}

}  // namespace threadkit
