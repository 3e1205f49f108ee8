#pragma once

// Cayley-table finite groups, subgroups and homomorphisms.
//
// Elements of a FiniteGroup are indices 0..order-1. Every object here is
// immutable after construction; FiniteGroup shares its table between copies
// so passing it by value is cheap.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dpgrad {

using Elem = std::uint32_t;

struct Limits {
  std::size_t search_cap = 512;   // brute-force generating-set searches
  std::size_t table_cap = 4096;   // largest Cayley table we will build
};

// Dense bitset over element indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe);

  std::size_t universe() const { return universe_; }
  bool contains(Elem x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void insert(Elem x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  std::size_t count() const;
  bool subset_of(const ElementSet& other) const;
  std::vector<Elem> to_vector() const;
  std::size_t hash() const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

class FiniteGroup {
 public:
  // The trivial group.
  FiniteGroup();

  // Validates the table: latin square, identity, inverses, associativity
  // (exhaustively when order <= 256) and that `generators` generate.
  static FiniteGroup from_table(std::size_t order, std::vector<Elem> table,
                                std::vector<Elem> generators,
                                std::string name = {},
                                std::vector<std::string> labels = {});

  std::size_t order() const { return impl_->n; }
  Elem identity() const { return impl_->id; }
  Elem mul(Elem a, Elem b) const { return impl_->mult[a * impl_->n + b]; }
  Elem inv(Elem a) const { return impl_->inv[a]; }
  // g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  // x^-1 y^-1 x y
  Elem commutator(Elem x, Elem y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }
  Elem pow(Elem x, std::int64_t k) const;
  std::size_t element_order(Elem x) const { return impl_->orders[x]; }

  const std::vector<Elem>& generators() const { return impl_->gens; }
  const std::string& name() const { return impl_->name; }
  const std::vector<std::string>& labels() const { return impl_->labels; }
  FiniteGroup renamed(std::string name) const;
  bool is_abelian() const;
  std::span<const Elem> table() const { return impl_->mult; }

  bool same_object(const FiniteGroup& other) const {
    return impl_ == other.impl_;
  }

 private:
  struct Impl {
    std::size_t n = 1;
    std::vector<Elem> mult;
    std::vector<Elem> inv;
    std::vector<std::uint32_t> orders;
    Elem id = 0;
    std::vector<Elem> gens;
    std::string name;
    std::vector<std::string> labels;
  };
  explicit FiniteGroup(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

class Subgroup {
 public:
  Subgroup(FiniteGroup parent, ElementSet members, std::vector<Elem> generators);

  const FiniteGroup& parent() const { return parent_; }
  const ElementSet& members() const { return members_; }
  const std::vector<Elem>& elements() const { return elements_; }
  const std::vector<Elem>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Elem x) const { return members_.contains(x); }
  bool subset_of(const Subgroup& other) const {
    return members_.subset_of(other.members_);
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.members_ == b.members_;
  }

 private:
  FiniteGroup parent_;
  ElementSet members_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
};

class Homomorphism {
 public:
  // Checks map(x g) = map(x) map(g) for every x and source generator g.
  Homomorphism(FiniteGroup source, FiniteGroup target, std::vector<Elem> images);

  // Extends generator images along the Cayley graph; DomainError when the
  // assignment does not define a homomorphism.
  static Homomorphism from_generator_images(FiniteGroup source,
                                            FiniteGroup target,
                                            std::span<const Elem> images);

  Elem operator()(Elem x) const { return images_[x]; }
  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  const std::vector<Elem>& images() const { return images_; }
  Subgroup kernel() const;
  Subgroup image() const;
  bool is_surjective() const;

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Elem> images_;
};

// A subgroup re-indexed as a group in its own right.
struct EmbeddedGroup {
  FiniteGroup group;
  std::vector<Elem> embedding;  // group element i -> parent element
};

Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);

// Smallest subgroup containing `seed`; elements sorted by index.
Subgroup closure(const FiniteGroup& g, std::span<const Elem> seed);
// <K, x> built coset by coset from K.
Subgroup join(const Subgroup& k, Elem x);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);

// <seed>^conjugators: generated by c s c^-1, c in conjugators, s in seed.
Subgroup normal_closure(const FiniteGroup& g, const Subgroup& conjugators,
                        std::span<const Elem> seed);

// N is contained in `in` and normalised by it.
bool is_normal_in(const Subgroup& n, const Subgroup& in);
bool is_normal(const Subgroup& n);

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& x,
                             const Subgroup& y);
Subgroup derived_subgroup(const Subgroup& h);
Subgroup center(const FiniteGroup& g);

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t p);

// Exact minimum generating sets by breadth-first search over the subgroups
// reachable by adding one cyclic subgroup at a time. CapExceeded above
// limits.search_cap.
std::vector<Elem> min_generating_set(const Subgroup& h, const Limits& limits = {});
std::size_t d_min(const Subgroup& h, const Limits& limits = {});
std::size_t d_min(const FiniteGroup& g, const Limits& limits = {});

// Minimum S inside N with <S>^conjugators = N. NotNormal when N is not
// normalised by `conjugators`.
std::vector<Elem> min_normal_generating_set(const Subgroup& conjugators,
                                            const Subgroup& n,
                                            const Limits& limits = {});
std::size_t d_normal_min(const FiniteGroup& parent, const Subgroup& n,
                         const Limits& limits = {});

// Element index encoding i_A * |B| + i_B.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           const Limits& limits = {});

// Cosets are numbered by their smallest member, in increasing order.
std::pair<FiniteGroup, Homomorphism> quotient(const Subgroup& n);

EmbeddedGroup as_group(const Subgroup& h);

// Conjugacy classes of g, each sorted, ordered by smallest member.
std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g);

// Every normal subgroup, sorted by (order, elements).
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);

// One element (the smallest index) per nontrivial cyclic subgroup of h.
std::vector<Elem> cyclic_representatives(const Subgroup& h);

struct SubgroupInfo {
  Subgroup subgroup;
  std::size_t rank = 0;  // d(subgroup)
};

// Every subgroup of g, found by breadth-first closure over joins with
// cyclic subgroups starting from the trivial group. The level at which a
// subgroup first appears is its minimum number of generators, and every
// subgroup appears, so the list is certified complete. Sorted by
// (order, elements). CapExceeded above limits.search_cap.
std::vector<SubgroupInfo> all_subgroups(const FiniteGroup& g, const Limits& limits = {});

struct FiberProductData {
  FiniteGroup base;
  Homomorphism quot;
  FiniteGroup product;     // base x base
  Subgroup subgroup;       // {(x,y) : q(x) = q(y)}
  Subgroup diagonal;       // {(x,x)}
  std::size_t index = 0;   // [base x base : subgroup]
  bool kernel_central = false;
  // When the kernel is central: (x,y) -> x y^-1 from the fiber product onto
  // ker(q), whose kernel is the diagonal.
  std::optional<EmbeddedGroup> subgroup_group;
  std::optional<EmbeddedGroup> kernel_group;
  std::optional<Homomorphism> central_map;
};

FiberProductData fiber_product(const Homomorphism& q, const Limits& limits = {});

}  // namespace dpgrad
