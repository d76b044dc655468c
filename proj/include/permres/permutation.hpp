#pragma once

// Permutations act on the right: x^(pq) = (x^p)^q, so p * q applies p first.
// Points are 0-based in memory and 1-based in every text format.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "permres/bigint.hpp"

namespace permres {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  explicit Permutation(std::vector<Point> images);  // validated

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(long long k) const;
  BigInt order() const;
  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const;
  std::size_t support_size() const;

  Permutation operator*(const Permutation& q) const;
  Permutation& operator*=(const Permutation& q);
  // this^g = g^-1 * this * g
  Permutation conjugate(const Permutation& g) const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return images_ != o.images_; }
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

  std::size_t hash() const;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

// Disjoint-cycle text "(1 2)(3 4)" (commas allowed as separators), "()" for the
// identity, or a bracketed 1-based image list "[2,1,4,3,5]".
Permutation parse_permutation(std::string_view text, std::size_t degree);
std::string format_cycles(const Permutation& p);
std::string format_images(const Permutation& p);

std::ostream& operator<<(std::ostream& os, const Permutation& p);

// "degree N" header, one permutation per line, '#' starts a comment.
// An optional "label <text>" line may follow the header.
struct GeneratorFile {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::string label;
};

GeneratorFile parse_generator_file(std::string_view text);
GeneratorFile read_generator_file(const std::string& path);
std::string format_generator_file(const GeneratorFile& f);

}  // namespace permres
