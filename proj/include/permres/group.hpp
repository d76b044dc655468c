#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/permutation.hpp"

namespace permres {

struct GeneratedGroup {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::string label;

  GeneratedGroup() = default;
  // An empty generator list becomes the identity-only group.
  GeneratedGroup(std::size_t degree, std::vector<Permutation> gens, std::string label = {});
};

struct ChainOptions {
  std::vector<Point> base_hint;
  // When the group order is already known, the randomized pass can stop at it
  // and no verification pass is needed: a partial chain whose orbit product
  // equals |G| is complete.
  std::optional<BigInt> known_order;
  bool random_prepass = true;
  std::uint64_t seed = 0x5eed5eedULL;
  std::size_t max_degree = 200000;
};

// Base, strong generators and explicit transversals (u and u^-1 per orbit point).
class StabilizerChain {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> gens;  // strong generators fixing earlier base points
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;  // point -> index in orbit, -1 if absent
    std::vector<Permutation> reps;       // reps[i] maps base_point to orbit[i]
    std::vector<Permutation> inv_reps;
    std::vector<std::vector<char>> tested;  // Schreier pairs known to sift through

    bool in_orbit(Point x) const { return position[x] >= 0; }
    const Permutation& rep(Point x) const { return reps[static_cast<std::size_t>(position[x])]; }
    const Permutation& inv_rep(Point x) const {
      return inv_reps[static_cast<std::size_t>(position[x])];
    }
  };

  StabilizerChain() = default;
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  static StabilizerChain build(const GeneratedGroup& g, const ChainOptions& opt = {});

  std::size_t degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }
  const Level& level(std::size_t i) const { return levels_[i]; }
  std::vector<Point> base() const;
  BigInt order() const;
  // Order of the stabilizer of the first i base points.
  BigInt order_from(std::size_t i) const;

  bool contains(const Permutation& p) const;
  std::pair<Permutation, std::size_t> sift(Permutation p, std::size_t from = 0) const;

  // Strong generators of the pointwise stabilizer of base[0..i-1]; empty if trivial.
  const std::vector<Permutation>& strong_generators(std::size_t i) const;
  StabilizerChain suffix(std::size_t i) const;

  // Enlarge the group by g and restore completeness.
  void extend(const Permutation& g);

  Permutation random_element(std::mt19937_64& rng) const;

 private:
  std::size_t add_level(Point b);
  void add_strong(const Permutation& h, std::size_t from, std::size_t to);
  void extend_orbit(Level& lv, std::size_t first_new_gen);
  std::size_t insert(const Permutation& h);  // sift + add; returns depth reached or npos
  void complete();
  static Point choose_base_point(const Permutation& h);

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(GeneratedGroup g, const ChainOptions& opt = {});
  PermGroup(GeneratedGroup g, std::shared_ptr<const StabilizerChain> chain);

  std::size_t degree() const { return gens_.degree; }
  const GeneratedGroup& generated() const { return gens_; }
  const std::vector<Permutation>& generators() const { return gens_.generators; }
  const std::string& label() const { return gens_.label; }
  void set_label(std::string s) { gens_.label = std::move(s); }

  const StabilizerChain& chain() const { return *chain_; }
  std::shared_ptr<const StabilizerChain> chain_ptr() const { return chain_; }
  BigInt order() const { return chain_->order(); }
  bool contains(const Permutation& p) const { return chain_->contains(p); }
  bool is_trivial() const { return chain_->order() == 1; }

 private:
  GeneratedGroup gens_;
  std::shared_ptr<const StabilizerChain> chain_;
};

// Product-replacement random elements over a fixed generator list.
class RandomElements {
 public:
  RandomElements(const std::vector<Permutation>& gens, std::size_t degree, std::uint64_t seed);
  Permutation next();

 private:
  std::vector<Permutation> state_;
  Permutation acc_;
  std::mt19937_64 rng_;
};

}  // namespace permres
