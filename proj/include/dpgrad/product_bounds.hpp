#pragma once

// Subgroups of direct products A x B: Goursat data, the explicit generating
// set S u R_A u R_B, the three generator-count bounds, the torsion bound and
// the numeric step behind 128 |T| |K|^(3/7).
//
// All subgroups live in G = direct_product(A, B); A is identified with
// A x 1 and B with 1 x B.

#include <cstddef>
#include <string>
#include <vector>

#include "dpgrad/finite_group.hpp"
#include "dpgrad/smith.hpp"

namespace dpgrad {

struct GoursatData {
  FiniteGroup A, B, G;
  Subgroup H;
  Subgroup piA_H;    // pi_A(H) x 1
  Subgroup piB_H;    // 1 x pi_B(H)
  Subgroup A_cap_H;  // H n (A x 1)
  Subgroup B_cap_H;
  Subgroup AH, BH;
  std::size_t index_G_H = 1;
  std::size_t index_G_AH = 1;
  std::size_t index_AH_H = 1;
  std::size_t index_G_BH = 1;
  std::size_t index_BH_H = 1;
  // [pi_A(H) : A n H] == [pi_B(H) : B n H], both equal to |H| / |A0 x B0|.
  bool goursat_consistent = false;
};

// H must be a subgroup of a group built as direct_product(A, B).
GoursatData goursat_data(const FiniteGroup& A, const FiniteGroup& B, const Subgroup& H);

// Elements of G for a in A and b in B, and the projections back.
Elem embed_a(const GoursatData& gd, Elem a);
Elem embed_b(const GoursatData& gd, Elem b);
Elem project_a(const GoursatData& gd, Elem g);
Elem project_b(const GoursatData& gd, Elem g);

struct NormalityCheck {
  bool hypothesis = false;  // B K = G
  bool conclusion = false;  // A n K normal in A; only meaningful with the hypothesis
  bool pass() const { return !hypothesis || conclusion; }
};

NormalityCheck verify_normality(const FiniteGroup& A, const FiniteGroup& B, const Subgroup& K);

struct GeneratorConstruction {
  std::vector<Elem> S;    // inside A n H, normally generating it under pi_A(H)
  std::vector<Elem> R_A;  // lifts in H of a minimum generating set of pi_A(H)
  std::vector<Elem> R_B;
  Subgroup combined;
  bool normal_closure_ok = false;  // <S>^{pi_A(H)} = A n H
  bool combined_ok = false;        // combined == H
  std::size_t size() const { return S.size() + R_A.size() + R_B.size(); }
};

GeneratorConstruction construct_generators(const GoursatData& gd, const Limits& limits = {});

// Largest f with f^7 <= x^3, i.e. floor(x^(3/7)).
BigInt floor_pow_3_7(const BigInt& x);

struct BoundReport {
  std::size_t d_H = 0;
  std::size_t d_G = 0;
  BigInt bound1, bound2, bound3;
  // d(G) ([G:AH] + [G:BH] + 128 [G:BH] f): the sum the proof of bound 3
  // actually assembles before rounding 128 + 2 up to 130.
  BigInt bound3_assembled;
  bool pass1 = false, pass2 = false, pass3 = false, pass3_assembled = false;
  bool pass() const { return pass1 && pass2 && pass3 && pass3_assembled; }
};

// d_H and d_G are exact minimum generator counts supplied by the caller.
BoundReport evaluate_bounds(const GoursatData& gd, std::size_t d_G, std::size_t d_H);
// Computes d(H) and d(G) by brute force.
BoundReport evaluate_bounds(const GoursatData& gd, const Limits& limits = {});

// floor(128 t k^(3/7)) in exact integer arithmetic.
BigInt presentation_bound(const BigInt& k_order, const BigInt& t_size);

struct RecursionCheck {
  double lhs = 0;  // for display only
  double rhs = 0;
  bool pass = false;
};

// 128 t (k/n)^(3/7) + 6 t log2 n + 8 n^(3/7) <= 128 t k^(3/7), left side
// rounded up and right side rounded down. DomainError unless t >= 1, n >= 2
// and n divides k.
RecursionCheck check_recursion_step(unsigned long t, unsigned long k, unsigned long n);

struct RecursionSweep {
  std::size_t checked = 0;
  std::size_t failures = 0;
  // First failing (t, k, n) when failures > 0.
  unsigned long fail_t = 0, fail_k = 0, fail_n = 0;
};

// t = 1, k = n for n = 2..n_max.
RecursionSweep sweep_recursion_diagonal(unsigned long n_max, bool parallel);
// Every t <= t_max, every k on the grid and every divisor n >= 2 of k. The
// grid holds all k <= dense_max plus a fixed set of geometric and highly
// composite values up to k_max.
std::vector<unsigned long> recursion_grid(unsigned long dense_max, unsigned long k_max);
RecursionSweep sweep_recursion_grid(const std::vector<unsigned long>& ks, unsigned long t_max,
                                    bool parallel);

struct TorsionCheck {
  BigInt t_H, t_A, t_B;  // torsion orders of H^ab, pi_A(H)^ab, pi_B(H)^ab
  std::size_t index = 1;
  std::string bound_value;  // t_A t_B [G:H]^(2(1 + ln [G:H])), rounded down
  bool bound_ok = false;
  bool sandwich_lower = false;  // [pi_A H, A0] x [pi_B H, B0] <= H'
  bool sandwich_upper = false;  // H' <= H n (pi_A(H)' x pi_B(H)')
  bool pass() const { return bound_ok && sandwich_lower && sandwich_upper; }
};

TorsionCheck verify_torsion_bound(const GoursatData& gd);

// log-domain check t_H <= t_A t_B i^(2(1 + ln i)), exact when t_H <= t_A t_B.
bool torsion_bound_holds(const BigInt& t_H, const BigInt& t_A, const BigInt& t_B,
                         const BigInt& index, std::string* bound_value = nullptr);

struct InstanceReport {
  std::size_t a = 0, b = 0;  // positions in the group list
  std::string A, B;
  std::size_t subgroup = 0;  // position in the sorted lattice of A x B
  std::size_t order_H = 1;
  std::size_t index_G_H = 1, index_G_AH = 1, index_AH_H = 1, index_G_BH = 1, index_BH_H = 1;
  BoundReport bounds;
  NormalityCheck normality;
  std::size_t S = 0, R_A = 0, R_B = 0;
  bool construction_ok = false;
  // d(H) <= d_{pi_A H}(A0) + d(pi_A H) + d(pi_B H), and the normal
  // generator count of A0 against 128 d(pi_A H) floor([G:H]^(3/7)).
  bool chain_ok = false;
  bool goursat_ok = false;
  TorsionCheck torsion;
  bool pass() const {
    return bounds.pass() && normality.pass() && construction_ok && chain_ok && goursat_ok &&
           torsion.pass();
  }
};

struct UniverseReport {
  std::vector<InstanceReport> instances;
  std::string enumeration = "certified-complete";
  std::size_t failures = 0;
};

// Every ordered pair (A, B) from `groups` and every subgroup H <= A x B.
UniverseReport run_product_universe(const std::vector<FiniteGroup>& groups, bool parallel,
                                    const Limits& limits = {});
// Every subgroup H <= A x B for one pair; a and b are 0 and 1.
UniverseReport run_product_pair(const FiniteGroup& A, const FiniteGroup& B, bool parallel,
                                const Limits& limits = {});

}  // namespace dpgrad
