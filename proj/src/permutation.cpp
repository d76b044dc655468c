#include "permres/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "permres/errors.hpp"

namespace permres {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw InputError("image list is not a bijection");
    seen[x] = 1;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point x = c[i];
      if (x >= degree) throw InputError("cycle point exceeds degree");
      if (used[x]) throw InputError("point repeated in cycles");
      used[x] = 1;
      p.images_[x] = c[(i + 1) % c.size()];
    }
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = Point(i);
  return r;
}

Permutation Permutation::pow(long long k) const {
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1
                               : static_cast<unsigned long long>(k);
  Permutation r(degree());
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

BigInt Permutation::order() const {
  BigInt r = 1;
  for (const auto& c : cycles()) {
    BigInt len = static_cast<unsigned long>(c.size());
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), len.get_mpz_t());
  }
  return r;
}

std::vector<std::vector<Point>> Permutation::cycles(bool include_fixed) const {
  std::vector<std::vector<Point>> out;
  std::vector<char> seen(images_.size(), 0);
  for (Point s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Point> c;
    for (Point x = s; !seen[x]; x = images_[x]) {
      seen[x] = 1;
      c.push_back(x);
    }
    if (c.size() > 1 || include_fixed) out.push_back(std::move(c));
  }
  return out;
}

std::size_t Permutation::support_size() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) n += images_[i] != i;
  return n;
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (degree() != q.degree()) throw InputError("degree mismatch in composition");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = q.images_[images_[i]];
  return r;
}

Permutation& Permutation::operator*=(const Permutation& q) {
  if (degree() != q.degree()) throw InputError("degree mismatch in composition");
  for (auto& x : images_) x = q.images_[x];
  return *this;
}

Permutation Permutation::conjugate(const Permutation& g) const {
  // x^(g^-1 p g): send x^g to (x^p)^g
  if (degree() != g.degree()) throw InputError("degree mismatch in conjugation");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[g.images_[i]] = g.images_[images_[i]];
  return r;
}

std::size_t Permutation::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : images_) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  std::size_t read_number() {
    std::size_t start = pos_;
    unsigned long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
      if (v > (1ULL << 40)) throw ParseError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a point number", start);
    return static_cast<std::size_t>(v);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

Point checked_point(std::size_t v, std::size_t degree, std::size_t at) {
  if (v == 0) throw ParseError("points are numbered from 1", at);
  if (v > degree)
    throw ParseError("point " + std::to_string(v) + " exceeds degree " + std::to_string(degree), at);
  return static_cast<Point>(v - 1);
}

Permutation parse_image_list(Cursor& c, std::size_t degree) {
  std::vector<Point> images;
  std::vector<char> seen(degree, 0);
  c.advance();  // '['
  c.skip_space();
  if (!c.done() && c.peek() == ']') {
    c.advance();
  } else {
    for (;;) {
      c.skip_space();
      std::size_t at = c.pos();
      Point x = checked_point(c.read_number(), degree, at);
      if (seen[x]) throw ParseError("repeated image", at);
      seen[x] = 1;
      images.push_back(x);
      c.skip_space();
      if (c.done()) throw ParseError("unterminated image list", c.pos());
      if (c.peek() == ',') {
        c.advance();
        continue;
      }
      if (c.peek() == ']') {
        c.advance();
        break;
      }
      throw ParseError("expected ',' or ']'", c.pos());
    }
  }
  if (images.size() != degree)
    throw ParseError("image list has " + std::to_string(images.size()) +
                         " entries, expected " + std::to_string(degree),
                     c.pos() == 0 ? 0 : c.pos() - 1);
  return Permutation(std::move(images));
}

}  // namespace

Permutation parse_permutation(std::string_view text, std::size_t degree) {
  if (degree == 0) throw InputError("degree must be positive");
  Cursor c(text);
  c.skip_space();
  if (c.done()) throw ParseError("empty permutation", 0);
  if (c.peek() == '[') {
    Permutation p = parse_image_list(c, degree);
    c.skip_space();
    if (!c.done()) throw ParseError("trailing characters", c.pos());
    return p;
  }
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<char> used(degree, 0);
  while (!c.done()) {
    if (c.peek() != '(') throw ParseError("expected '('", c.pos());
    c.advance();
    std::vector<Point> cycle;
    c.skip_space();
    while (!c.done() && c.peek() != ')') {
      std::size_t at = c.pos();
      Point x = checked_point(c.read_number(), degree, at);
      if (used[x]) throw ParseError("point " + std::to_string(x + 1) + " repeated", at);
      used[x] = 1;
      cycle.push_back(x);
      c.skip_space();
      if (!c.done() && c.peek() == ',') {
        c.advance();
        c.skip_space();
        if (!c.done() && c.peek() == ')') throw ParseError("dangling ','", c.pos());
      }
    }
    if (c.done()) throw ParseError("unterminated cycle", c.pos());
    c.advance();  // ')'
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    c.skip_space();
  }
  return Permutation(std::move(images));
}

std::string format_cycles(const Permutation& p) {
  auto cs = p.cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::string format_images(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[Point(i)] + 1);
  }
  return out + "]";
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  return os << format_cycles(p);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

GeneratorFile parse_generator_file(std::string_view text) {
  GeneratorFile f;
  bool have_degree = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto where = [&](const std::string& msg) {
      return InputError("line " + std::to_string(line_no) + ": " + msg);
    };
    if (!have_degree) {
      if (line.substr(0, 6) != "degree") throw where("expected 'degree N' header");
      std::string num(trim(line.substr(6)));
      try {
        std::size_t used = 0;
        unsigned long long d = std::stoull(num, &used);
        if (used != num.size() || d == 0) throw std::invalid_argument("bad");
        f.degree = static_cast<std::size_t>(d);
      } catch (const std::exception&) {
        throw where("bad degree '" + num + "'");
      }
      have_degree = true;
    } else if (line.substr(0, 6) == "label " || line == "label") {
      f.label = std::string(trim(line.substr(5)));
    } else {
      try {
        f.generators.push_back(parse_permutation(line, f.degree));
      } catch (const ParseError& e) {
        throw InputError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (end == text.size()) break;
  }
  if (!have_degree) throw InputError("generator file has no 'degree N' header");
  if (f.generators.empty()) f.generators.push_back(Permutation(f.degree));
  return f;
}

GeneratorFile read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generator_file(ss.str());
}

std::string format_generator_file(const GeneratorFile& f) {
  std::string out = "degree " + std::to_string(f.degree) + "\n";
  if (!f.label.empty()) out += "label " + f.label + "\n";
  for (const auto& g : f.generators) out += format_cycles(g) + "\n";
  return out;
}

}  // namespace permres
