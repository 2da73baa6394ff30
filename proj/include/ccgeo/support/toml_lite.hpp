#ifndef CCGEO_SUPPORT_TOML_LITE_HPP
#define CCGEO_SUPPORT_TOML_LITE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ccgeo::toml {

// Minimal TOML subset used by the structure and surface files: bare keys,
// strings, integers, floats, booleans, (nested) arrays, [table] and
// [[array-of-table]] headers. Dates, dotted keys and inline tables are not
// part of the file formats and are rejected.
class Value;
using ValuePtr = std::shared_ptr<Value>;

class Value {
 public:
  enum class Kind { Integer, Float, String, Boolean, Array, Table };

  Kind kind() const { return kind_; }

  static ValuePtr make_table();
  static ValuePtr make_array();

  std::int64_t as_int() const;
  double as_double() const;  // accepts integers too
  const std::string& as_string() const;
  bool as_bool() const;

  const std::vector<ValuePtr>& items() const;          // arrays
  const std::map<std::string, ValuePtr>& entries() const;  // tables

  bool has(const std::string& key) const;
  const ValuePtr& at(const std::string& key) const;  // throws with key name

  // Mutators used by the parser.
  void set(const std::string& key, ValuePtr v);
  void push(ValuePtr v);

  std::int64_t int_v = 0;
  double float_v = 0.0;
  std::string string_v;
  bool bool_v = false;

 private:
  friend ValuePtr parse_toml(const std::string&);
  friend class Parser;
  explicit Value(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<ValuePtr> array_v_;
  std::map<std::string, ValuePtr> table_v_;
};

// Parses text, returning the root table. Throws std::runtime_error with a
// line number on malformed input.
ValuePtr parse_toml(const std::string& text);

ValuePtr parse_toml_file(const std::string& path);

}  // namespace ccgeo::toml

#endif
