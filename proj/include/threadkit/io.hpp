#ifndef THREADKIT_IO_HPP
#define THREADKIT_IO_HPP

#include "threadkit/hull3.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace threadkit {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

// {"schema": 1, "dimension": 2, "name": "zig", "vertices": [["0", "0"], ["2", "2"]]}
// Coordinates are strings holding integers, decimals or p/q fractions.
struct ChainDocument {
  int schema = kSchemaVersion;
  int dimension = 2;
  std::optional<std::string> name;
  std::vector<std::vector<Scalar>> vertices;
};

using AnyChain = std::variant<Chain2, Chain3>;

ChainDocument parse_document(const std::string& json_text);
std::string format_document(const ChainDocument& doc);

ChainDocument to_document(const Chain2& c, std::optional<std::string> name = std::nullopt);
ChainDocument to_document(const Chain3& c, std::optional<std::string> name = std::nullopt);

// Validates the vertices; throws ChainError.
AnyChain to_chain(const ChainDocument& doc);

AnyChain parse_chain(const std::filesystem::path& path);
void write_chain(const Chain2& c, const std::filesystem::path& path, std::optional<std::string> name = std::nullopt);
void write_chain(const Chain3& c, const std::filesystem::path& path, std::optional<std::string> name = std::nullopt);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace threadkit

#endif
