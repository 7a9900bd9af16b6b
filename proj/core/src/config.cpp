#include <coopkin/config.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace coopkin {

namespace {

// A config value is a scalar token (number or word) or a nested list.
struct Value;
using ValueList = std::vector<Value>;
struct Value {
  std::variant<double, std::string, ValueList> data;
  int line{0};
};

struct Entry {
  Value value;
  int line{0};
};

using Section = std::map<std::string, Entry>;

[[noreturn]] void fail(int line, const std::string &what) {
  std::ostringstream msg;
  msg << "config line " << line << ": " << what;
  throw ConfigError(msg.str());
}

struct Parser {
  std::string_view text;
  size_t pos{0};
  int line{1};

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') ++line;
    ++pos;
  }

  void skip_ws_and_comments(bool stop_at_newline) {
    while (!eof()) {
      const char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == '\n') {
        if (stop_at_newline) return;
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string read_token() {
    const size_t start = pos;
    while (!eof()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ']' ||
          c == '[' || c == '#' || c == '=')
        break;
      advance();
    }
    return std::string(text.substr(start, pos - start));
  }

  Value read_value() {
    skip_ws_and_comments(false);
    if (eof()) fail(line, "expected a value");
    Value v;
    v.line = line;
    if (peek() == '[') {
      advance();
      ValueList items;
      while (true) {
        skip_ws_and_comments(false);
        if (eof()) fail(v.line, "unterminated '['");
        if (peek() == ']') {
          advance();
          break;
        }
        if (peek() == ',') {
          advance();
          continue;
        }
        items.push_back(read_value());
      }
      v.data = std::move(items);
      return v;
    }
    const std::string tok = read_token();
    if (tok.empty()) fail(line, "expected a value");
    double num = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), num);
    if (ec == std::errc() && ptr == tok.data() + tok.size())
      v.data = num;
    else
      v.data = tok;
    return v;
  }
};

std::map<std::string, Section> parse_sections(std::string_view text) {
  std::map<std::string, Section> sections;
  Parser p{text};
  std::string current;
  while (true) {
    p.skip_ws_and_comments(false);
    if (p.eof()) break;
    if (p.peek() == '[') {
      const int at = p.line;
      p.advance();
      std::string name;
      while (!p.eof() && p.peek() != ']' && p.peek() != '\n') {
        name.push_back(p.peek());
        p.advance();
      }
      if (p.eof() || p.peek() != ']') fail(at, "unterminated section header");
      p.advance();
      current = name;
      sections[current];  // present even if empty
      continue;
    }
    const int at = p.line;
    const std::string key = p.read_token();
    if (key.empty()) fail(at, "expected a key");
    p.skip_ws_and_comments(true);
    if (p.eof() || p.peek() != '=') fail(at, "expected '=' after key '" + key + "'");
    p.advance();
    Value v = p.read_value();
    if (current.empty()) fail(at, "key '" + key + "' appears before any [section]");
    auto [it, inserted] = sections[current].emplace(key, Entry{std::move(v), at});
    if (!inserted) fail(at, "duplicate key '" + key + "' in [" + current + "]");
  }
  return sections;
}

const ValueList &as_list(const Value &v, const std::string &field) {
  if (!std::holds_alternative<ValueList>(v.data))
    fail(v.line, "field '" + field + "' must be a list");
  return std::get<ValueList>(v.data);
}

double as_number(const Value &v, const std::string &field) {
  if (!std::holds_alternative<double>(v.data))
    fail(v.line, "field '" + field + "' must be numeric");
  return std::get<double>(v.data);
}

std::vector<double> number_list(const Value &v, const std::string &field) {
  std::vector<double> out;
  for (const Value &item : as_list(v, field)) out.push_back(as_number(item, field));
  return out;
}

Pose pose_from(const Value &v, const std::string &field) {
  const std::vector<double> x = number_list(v, field);
  if (x.size() != 7)
    fail(v.line, "field '" + field + "' must have 7 entries [x, y, z, qw, qx, qy, qz]");
  Pose pose;
  pose.position = Vec3(x[0], x[1], x[2]);
  try {
    pose.orientation = UnitQuat(x[3], x[4], x[5], x[6]);
  } catch (const std::invalid_argument &e) {
    fail(v.line, "field '" + field + "': " + e.what());
  }
  return pose;
}

SerialChain chain_from(const std::string &name, const Section &sec,
                       std::vector<std::string> &warnings) {
  SerialChain chain;
  chain.name = name;

  const auto find = [&](const char *key) -> const Entry * {
    const auto it = sec.find(key);
    return it == sec.end() ? nullptr : &it->second;
  };

  const Entry *base = find("base_pose");
  if (!base) throw ConfigError("config: [" + name + "] is missing 'base_pose'");
  chain.base_pose = pose_from(base->value, name + ".base_pose");

  const Entry *dh = find("dh");
  if (!dh) throw ConfigError("config: [" + name + "] is missing 'dh'");
  for (const Value &rowv : as_list(dh->value, name + ".dh")) {
    const ValueList &row = as_list(rowv, name + ".dh row");
    if (row.size() != 5)
      fail(rowv.line, "dh rows must be [a, alpha, d, theta_offset, kind]");
    DHRow r;
    r.a = as_number(row[0], "dh.a");
    r.alpha = as_number(row[1], "dh.alpha");
    r.d = as_number(row[2], "dh.d");
    r.theta_offset = as_number(row[3], "dh.theta_offset");
    if (!std::holds_alternative<std::string>(row[4].data))
      fail(row[4].line, "dh kind must be 'revolute' or 'prismatic'");
    const std::string &kind = std::get<std::string>(row[4].data);
    if (kind == "revolute")
      r.kind = JointKind::revolute;
    else if (kind == "prismatic")
      r.kind = JointKind::prismatic;
    else
      fail(row[4].line, "unknown joint kind '" + kind + "'");
    chain.rows.push_back(r);
  }
  if (chain.dof() < 6) {
    std::ostringstream msg;
    msg << "[" << name << "] has " << chain.dof()
        << " joints; a cooperative arm needs n >= 6";
    fail(dh->line, msg.str());
  }

  if (const Entry *lim = find("limits")) {
    for (const Value &rowv : as_list(lim->value, name + ".limits")) {
      const std::vector<double> pair = number_list(rowv, name + ".limits row");
      if (pair.size() != 2) fail(rowv.line, "limit rows must be [lo, hi]");
      if (!(pair[0] < pair[1])) fail(rowv.line, "limit rows require lo < hi");
      chain.limits.push_back(JointLimit{pair[0], pair[1]});
    }
    if (static_cast<int>(chain.limits.size()) != chain.dof())
      fail(lim->line, "[" + name + "] limits count must match the dh row count");
  } else {
    warnings.push_back("[" + name + "] has no 'limits'; joints are unbounded");
  }

  if (const Entry *tool = find("tool_offset"))
    chain.tool_offset = pose_from(tool->value, name + ".tool_offset");

  return chain;
}

void append_pose(std::ostringstream &out, const char *key, const Pose &p) {
  const Vec3 xyz = p.orientation.xyz();
  out << key << " = [" << p.position.x() << ", " << p.position.y() << ", "
      << p.position.z() << ", " << p.orientation.w() << ", " << xyz.x() << ", "
      << xyz.y() << ", " << xyz.z() << "]\n";
}

void append_chain(std::ostringstream &out, const char *section, const SerialChain &c,
                  const Pose &object_offset) {
  out << "[" << section << "]\n";
  append_pose(out, "base_pose", c.base_pose);
  out << "dh = [\n";
  for (const DHRow &r : c.rows) {
    out << "  [" << r.a << ", " << r.alpha << ", " << r.d << ", " << r.theta_offset
        << ", " << (r.kind == JointKind::revolute ? "revolute" : "prismatic") << "],\n";
  }
  out << "]\n";
  if (!c.limits.empty()) {
    out << "limits = [\n";
    for (const JointLimit &l : c.limits) out << "  [" << l.lo << ", " << l.hi << "],\n";
    out << "]\n";
  }
  append_pose(out, "tool_offset", c.tool_offset);
  append_pose(out, "object_offset", object_offset);
  out << "\n";
}

}  // namespace

LoadedSystem load_system(std::string_view config_text) {
  const auto sections = parse_sections(config_text);

  LoadedSystem out;
  const auto section = [&](const char *name) -> const Section * {
    const auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  const Section *left = section("arm.left");
  const Section *right = section("arm.right");
  if (!left) throw ConfigError("config: missing [arm.left] section");
  if (!right) throw ConfigError("config: missing [arm.right] section");

  out.system.left = chain_from("arm.left", *left, out.warnings);
  out.system.right = chain_from("arm.right", *right, out.warnings);

  const auto object_offset = [&](const Section &sec, const char *name, Pose &dst) {
    const auto it = sec.find("object_offset");
    if (it == sec.end()) {
      out.warnings.push_back(std::string("[") + name +
                             "] has no 'object_offset'; defaulting to identity");
      dst = Pose::identity();
      return;
    }
    dst = pose_from(it->second.value, std::string(name) + ".object_offset");
  };
  object_offset(*left, "arm.left", out.system.object_offset_left);
  object_offset(*right, "arm.right", out.system.object_offset_right);

  const int dof = out.system.dof();
  out.seed = JointVector::Zero(dof);
  if (const Section *seed = section("seed")) {
    const auto it = seed->find("joints");
    if (it == seed->end()) throw ConfigError("config: [seed] is missing 'joints'");
    const std::vector<double> values = number_list(it->second.value, "seed.joints");
    if (static_cast<int>(values.size()) != dof) {
      std::ostringstream msg;
      msg << "config line " << it->second.line << ": seed.joints has " << values.size()
          << " entries but the system has " << dof << " joints";
      throw ConfigError(msg.str());
    }
    for (int i = 0; i < dof; ++i) out.seed[i] = values[i];
  } else {
    out.warnings.push_back("no [seed] section; starting from the zero configuration");
  }

  for (const auto &arm : {&out.system.left, &out.system.right}) {
    const auto violations =
        check_limits(*arm, out.seed.segment(arm == &out.system.left ? 0 : out.system.left.dof(),
                                            arm->dof()));
    for (const std::string &v : violations)
      out.warnings.push_back("seed violates limits: " + v);
  }

  return out;
}

LoadedSystem load_system_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open robot config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_system(buf.str());
}

std::string serialize_system(const DualArmSystem &sys, const JointVector &seed) {
  std::ostringstream out;
  out.precision(17);
  append_chain(out, "arm.left", sys.left, sys.object_offset_left);
  append_chain(out, "arm.right", sys.right, sys.object_offset_right);
  out << "[seed]\njoints = [";
  for (int i = 0; i < seed.size(); ++i) out << (i ? ", " : "") << seed[i];
  out << "]\n";
  return out.str();
}

}  // namespace coopkin
