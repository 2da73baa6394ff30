#include "ccgeo/support/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccgeo::toml {

ValuePtr Value::make_table() { return ValuePtr(new Value(Kind::Table)); }
ValuePtr Value::make_array() { return ValuePtr(new Value(Kind::Array)); }

std::int64_t Value::as_int() const {
  if (kind_ != Kind::Integer) throw std::runtime_error("TOML value is not an integer");
  return int_v;
}

double Value::as_double() const {
  if (kind_ == Kind::Integer) return static_cast<double>(int_v);
  if (kind_ != Kind::Float) throw std::runtime_error("TOML value is not a number");
  return float_v;
}

const std::string& Value::as_string() const {
  if (kind_ != Kind::String) throw std::runtime_error("TOML value is not a string");
  return string_v;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Boolean) throw std::runtime_error("TOML value is not a boolean");
  return bool_v;
}

const std::vector<ValuePtr>& Value::items() const {
  if (kind_ != Kind::Array) throw std::runtime_error("TOML value is not an array");
  return array_v_;
}

const std::map<std::string, ValuePtr>& Value::entries() const {
  if (kind_ != Kind::Table) throw std::runtime_error("TOML value is not a table");
  return table_v_;
}

bool Value::has(const std::string& key) const {
  return kind_ == Kind::Table && table_v_.count(key) > 0;
}

const ValuePtr& Value::at(const std::string& key) const {
  if (kind_ != Kind::Table) throw std::runtime_error("TOML value is not a table");
  auto it = table_v_.find(key);
  if (it == table_v_.end()) throw std::runtime_error("missing TOML key '" + key + "'");
  return it->second;
}

void Value::set(const std::string& key, ValuePtr v) {
  if (kind_ != Kind::Table) throw std::runtime_error("TOML value is not a table");
  table_v_[key] = std::move(v);
}

void Value::push(ValuePtr v) {
  if (kind_ != Kind::Array) throw std::runtime_error("TOML value is not an array");
  array_v_.push_back(std::move(v));
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ValuePtr run() {
    root_ = Value::make_table();
    current_ = root_;
    skip_ws_and_comments();
    while (pos_ < text_.size()) {
      if (peek() == '[') {
        parse_header();
      } else {
        parse_key_value();
      }
      skip_ws_and_comments();
    }
    return root_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("TOML parse error at line " + std::to_string(line_) + ": " + msg);
  }

  char peek() const { return text_[pos_]; }
  bool eof() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) advance();
  }

  void skip_ws_and_comments() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (!eof() && peek() == '#') {
        while (!eof() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  std::string parse_bare_key() {
    std::string key;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      peek() == '-')) {
      key += peek();
      advance();
    }
    if (key.empty()) fail("expected a key");
    return key;
  }

  void parse_header() {
    advance();  // '['
    const bool array_of_tables = !eof() && peek() == '[';
    if (array_of_tables) advance();
    skip_inline_ws();
    const std::string name = parse_bare_key();
    skip_inline_ws();
    if (eof() || peek() != ']') fail("expected ']' in table header");
    advance();
    if (array_of_tables) {
      if (eof() || peek() != ']') fail("expected ']]' in array-of-tables header");
      advance();
      ValuePtr arr;
      if (root_->has(name)) {
        arr = root_->at(name);
        if (arr->kind() != Value::Kind::Array) fail("'" + name + "' is not an array of tables");
      } else {
        arr = Value::make_array();
        root_->set(name, arr);
      }
      auto table = Value::make_table();
      arr->push(table);
      current_ = table;
    } else {
      auto table = Value::make_table();
      root_->set(name, table);
      current_ = table;
    }
  }

  void parse_key_value() {
    const std::string key = parse_bare_key();
    skip_inline_ws();
    if (eof() || peek() != '=') fail("expected '=' after key '" + key + "'");
    advance();
    skip_ws_and_comments();
    current_->set(key, parse_value());
  }

  ValuePtr parse_value() {
    if (eof()) fail("expected a value");
    const char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_boolean();
    return parse_number();
  }

  ValuePtr parse_string() {
    advance();  // opening quote
    std::string s;
    while (!eof() && peek() != '"') {
      if (peek() == '\\') {
        advance();
        if (eof()) fail("dangling escape");
        switch (peek()) {
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          case '"': s += '"'; break;
          case '\\': s += '\\'; break;
          default: fail("unsupported escape sequence");
        }
        advance();
      } else {
        if (peek() == '\n') fail("newline inside string");
        s += peek();
        advance();
      }
    }
    if (eof()) fail("unterminated string");
    advance();  // closing quote
    auto v = ValuePtr(new Value(Value::Kind::String));
    v->string_v = std::move(s);
    return v;
  }

  ValuePtr parse_array() {
    advance();  // '['
    auto arr = Value::make_array();
    skip_ws_and_comments();
    if (!eof() && peek() == ']') {
      advance();
      return arr;
    }
    for (;;) {
      arr->push(parse_value());
      skip_ws_and_comments();
      if (eof()) fail("unterminated array");
      if (peek() == ',') {
        advance();
        skip_ws_and_comments();
        if (!eof() && peek() == ']') {  // trailing comma
          advance();
          return arr;
        }
        continue;
      }
      if (peek() == ']') {
        advance();
        return arr;
      }
      fail("expected ',' or ']' in array");
    }
  }

  ValuePtr parse_boolean() {
    const std::string word = parse_bare_key();
    auto v = ValuePtr(new Value(Value::Kind::Boolean));
    if (word == "true") {
      v->bool_v = true;
    } else if (word == "false") {
      v->bool_v = false;
    } else {
      fail("unexpected token '" + word + "'");
    }
    return v;
  }

  ValuePtr parse_number() {
    std::string tok;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == 'e' || peek() == 'E' ||
                      peek() == '_')) {
      if (peek() != '_') tok += peek();
      advance();
    }
    if (tok.empty()) fail("expected a number");
    const bool is_float = tok.find_first_of(".eE") != std::string::npos;
    try {
      if (is_float) {
        auto v = ValuePtr(new Value(Value::Kind::Float));
        v->float_v = std::stod(tok);
        return v;
      }
      auto v = ValuePtr(new Value(Value::Kind::Integer));
      v->int_v = std::stoll(tok);
      return v;
    } catch (const std::exception&) {
      fail("malformed number '" + tok + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  ValuePtr root_;
  ValuePtr current_;
};

ValuePtr parse_toml(const std::string& text) { return Parser(text).run(); }

ValuePtr parse_toml_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_toml(ss.str());
}

}  // namespace ccgeo::toml
