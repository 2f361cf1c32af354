#include "etkin/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "etkin/errors.hpp"
#include "etkin/format.hpp"

namespace etkin {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  bool at_end() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool consume(char c) {
    if (at_end() || s[i] != c) return false;
    ++i;
    return true;
  }
};

// Longest alphabetic run starting at the cursor (may be empty).
std::string read_word(Cursor& c) {
  std::size_t start = c.i;
  while (!c.at_end() && std::isalpha(static_cast<unsigned char>(c.peek())))
    ++c.i;
  return c.s.substr(start, c.i - start);
}

double read_number(Cursor& c) {
  const std::size_t start = c.i;
  const char* begin = c.s.data() + c.i;
  const char* end = c.s.data() + c.s.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects '+'
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin)
    throw BadNumber("malformed number", start);
  // A '.' or digit right after the parsed prefix means the token continues
  // as a second number ("1.2.3"), not as a unit suffix.
  if (ptr != end &&
      (*ptr == '.' || std::isdigit(static_cast<unsigned char>(*ptr))))
    throw BadNumber("malformed number", start);
  c.i = static_cast<std::size_t>(ptr - c.s.data());
  return value;
}

int read_joint_index(Cursor& c) {
  const std::size_t start = c.i;
  const char* begin = c.s.data() + c.i;
  const char* end = c.s.data() + c.s.size();
  int value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin)
    throw BadNumber("expected a joint index after 'q'", start);
  c.i = static_cast<std::size_t>(ptr - c.s.data());
  return value;
}

struct RawTerm {
  ElementaryTransform et;
  std::size_t position;  // character offset of the term
};

RawTerm parse_term(Cursor& c) {
  const std::size_t term_pos = c.i;
  const std::string word = read_word(c);
  if (word.empty()) throw SyntaxError("expected a transform", term_pos);

  Motion motion;
  if (word[0] == 't')
    motion = Motion::Translation;
  else if (word[0] == 'R')
    motion = Motion::Rotation;
  else
    throw UnknownTransform("unknown transform '" + word + "'", term_pos);

  Axis axis;
  if (word.size() != 2)
    throw UnknownTransform("unknown transform '" + word + "'", term_pos);
  switch (word[1]) {
    case 'x': axis = Axis::X; break;
    case 'y': axis = Axis::Y; break;
    case 'z': axis = Axis::Z; break;
    default:
      throw UnknownTransform("unknown transform '" + word + "'", term_pos);
  }

  if (!c.consume('(')) throw SyntaxError("expected '('", c.i);
  c.skip_ws();
  if (c.at_end()) throw SyntaxError("expected ')'", c.i);

  ElementaryTransform et = ElementaryTransform::constant(motion, axis, 0.0);
  const std::size_t arg_pos = c.i;
  bool flip = false;
  if (c.peek() == '-' && c.i + 1 < c.s.size() && c.s[c.i + 1] == 'q') {
    flip = true;
    ++c.i;
  }
  if (!c.at_end() && c.peek() == 'q') {
    ++c.i;
    const int index = read_joint_index(c);
    if (index < 0) throw BadNumber("joint index must be >= 0", arg_pos);
    if (flip && motion == Motion::Translation)
      throw SyntaxError("translations cannot take a negated joint", arg_pos);
    et = ElementaryTransform::joint(motion, axis, index, flip);
  } else {
    const double number = read_number(c);
    double value = number;
    c.skip_ws();
    const std::size_t unit_pos = c.i;
    const std::string unit = read_word(c);
    if (unit == "deg") {
      if (motion == Motion::Translation)
        throw SyntaxError("'deg' only applies to rotations", unit_pos);
      value = number * (M_PI / 180.0);
    } else if (!unit.empty()) {
      throw SyntaxError("unknown unit '" + unit + "'", unit_pos);
    }
    et = ElementaryTransform::constant(motion, axis, value);
  }

  c.skip_ws();
  if (!c.consume(')')) throw SyntaxError("expected ')'", c.i);
  return {et, term_pos};
}

Ets assemble(const std::vector<RawTerm>& raw) {
  // Joint ordering is validated here, against character offsets, rather than
  // in the Ets constructor whose offsets are term indices.
  int next = 0;
  for (const auto& [et, pos] : raw) {
    if (!et.is_joint()) continue;
    const int j = et.joint_index();
    if (j < next)
      throw DuplicateJoint("joint q" + std::to_string(j) + " appears twice",
                           pos);
    if (j > next)
      throw NonMonotonicJoint(
          "joint indices must be consecutive from q0; expected q" +
              std::to_string(next) + ", found q" + std::to_string(j),
          pos);
    ++next;
  }
  std::vector<ElementaryTransform> terms;
  terms.reserve(raw.size());
  for (const auto& [et, pos] : raw) terms.push_back(et);
  return Ets(std::move(terms));
}

Ets parse_model_json(const std::string& text, const std::string& fallback_name);

}  // namespace

Ets parse_ets(const std::string& text) {
  Cursor c{text};
  std::vector<RawTerm> raw;
  c.skip_ws();
  if (c.at_end()) throw SyntaxError("expected at least one transform", c.i);
  while (!c.at_end()) {
    raw.push_back(parse_term(c));
    if (c.at_end()) break;
    if (!std::isspace(static_cast<unsigned char>(c.peek())))
      throw SyntaxError("expected whitespace between transforms", c.i);
    c.skip_ws();
  }
  return assemble(raw);
}

std::string to_text(const Ets& ets) {
  std::string out;
  for (int i = 0; i < ets.size(); ++i) {
    const auto& et = ets.term(i);
    if (i > 0) out += ' ';
    out += et.motion() == Motion::Rotation ? 'R' : 't';
    out += et.axis() == Axis::X ? 'x' : et.axis() == Axis::Y ? 'y' : 'z';
    out += '(';
    if (et.is_joint()) {
      if (et.flip()) out += '-';
      out += 'q';
      out += std::to_string(et.joint_index());
    } else {
      out += format_shortest(et.constant_value());
    }
    out += ')';
  }
  return out;
}

namespace {

Ets parse_model_json(const std::string& text,
                     const std::string& fallback_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("model JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("ets") || !doc["ets"].is_string())
    throw SyntaxError("model JSON needs a string field \"ets\"", 0);

  Ets ets = parse_ets(doc["ets"].get<std::string>());
  ets.set_name(doc.value("name", fallback_name));

  if (doc.contains("qlim")) {
    const auto& rows = doc["qlim"];
    if (!rows.is_array())
      throw SyntaxError("\"qlim\" must be an array of [lo, hi] pairs", 0);
    Eigen::Matrix<double, Eigen::Dynamic, 2> qlim(rows.size(), 2);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!rows[j].is_array() || rows[j].size() != 2)
        throw SyntaxError("\"qlim\" must be an array of [lo, hi] pairs", 0);
      qlim(j, 0) = rows[j][0].get<double>();
      qlim(j, 1) = rows[j][1].get<double>();
    }
    ets.set_qlim(qlim);
  }
  return ets;
}

}  // namespace

Ets load_model(const std::string& source) {
  if (auto text = builtin_model_text(source))
    return parse_model_json(*text, source);

  const std::filesystem::path path(source);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec)
    throw UnknownModel("unknown model '" + source +
                       "' (not a builtin, no such file)");
  if (!std::filesystem::is_regular_file(path, ec) || ec)
    throw IoError("model source '" + source + "' is not a readable file");

  std::ifstream in(path);
  std::stringstream buffer;
  if (!in || !(buffer << in.rdbuf()) || in.bad())
    throw IoError("cannot read model file '" + source + "'");
  const std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return parse_model_json(text, path.stem().string());
  Ets ets = parse_ets(text);
  ets.set_name(path.stem().string());
  return ets;
}

}  // namespace etkin
