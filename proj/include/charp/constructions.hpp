#pragma once

#include <optional>

#include "charp/differentials.hpp"
#include "charp/hurwitz_tree.hpp"

namespace charp {

// ---------------------------------------------------------------------------
// residue types and the projective power-sum system
// ---------------------------------------------------------------------------

// Type vector (a_1, ..., a_alpha), entries in F_p^x stored as 1..p-1.
using ResidueType = std::vector<u64>;

// (1, 2, 4, ..., 2^{alpha-1})
ResidueType power_of_two_type(u64 alpha);

// True iff some subset of size >= 2 admits signs with vanishing sum mod p;
// only then can the system have trivial solutions.
bool type_admits_trivial(u64 p, const ResidueType& a);

// d_j = sum_i a_i z_i^{2j+1}, j = 0..alpha-2 (exact, over the field of z).
std::vector<FieldElement> d_vector_z(const std::vector<FieldElement>& z, const ResidueType& a);

// The quadratic forms in c_0..c_r (r = alpha-1) attached to type
// (1,...,1,alpha); c_j = 0 for j > r. Coefficients over the field of c.
std::vector<FieldElement> d_vector_c(const std::vector<FieldElement>& c, u64 alpha);

struct SolutionClass {
    bool good = false;
    std::vector<int> zero_indices;          // J_0
    std::vector<std::vector<int>> classes;  // J_1..J_n (index sets, size >= 1)
    std::vector<int> signs;                 // per coordinate: +1/-1 within its class, 0 in J_0
    bool is_solution = false;               // d-vector vanishes
};

// Good iff all z_i != 0 and z_i^2 != z_j^2 for i != j; otherwise the
// partition into the zero set and equal-square classes with signs. For
// genuine trivial solutions the signed class sums vanish mod p (checked).
SolutionClass classify_solution(const std::vector<FieldElement>& z, const ResidueType& a);

// Rank of the (alpha-1) x alpha Jacobian [(2j+1) a_i z_i^{2j}]; requires
// d_vector_z(z, a) = 0.
int tangent_rank(const std::vector<FieldElement>& z, const ResidueType& a);

// ---------------------------------------------------------------------------
// elimination in c-coordinates
// ---------------------------------------------------------------------------

struct CSolution {
    std::vector<FieldElement> c;  // over F_p, normalized c_0 = 1
};

struct EliminationError : Error {
    EliminationError(const std::string& what, std::string dump)
        : Error(what), state_dump(std::move(dump)) {}
    std::string state_dump;
};

// The inductive linear elimination for type (1,...,1,alpha); h odd,
// 3 <= h < p. Returns the unique good solution, fully verified (the d-vector
// vanishes, the discriminant is nonzero, and the attached form is
// logarithmic with a single zero of order h-1 at infinity).
CSolution good_solution_elimination(u64 p, u64 h);

// The logarithmic form attached to a c-solution: omega = df/f for
// f = (g/h)((z-1)/(z+1))^alpha with h = sum c_i z^{r-i}, g(z) = h(-z).
DifferentialForm c_solution_form(const CSolution& c, u64 alpha);

// ---------------------------------------------------------------------------
// exhaustive projective scan
// ---------------------------------------------------------------------------

struct SolutionRecord {
    std::vector<FieldElement> z;  // chart-normalized: leading zeros, then 1
    int chart = 0;                // index of the first nonzero coordinate
    SolutionClass cls;
    int rank = 0;  // Jacobian rank
};

struct BruteOptions {
    int jobs = 1;
    bool use_kernel = true;
    u64 max_points = 400'000'000;
};

// Exhaustive scan of P^{alpha-1}(F_{p^ext}) for common zeros of the d_j,
// deduplicated projectively via chart normalization, deterministic order.
std::vector<SolutionRecord> solve_brute(u64 p, u64 h, const ResidueType& a, int ext,
                                        const BruteOptions& opt = {});

struct CountPolicy {
    int max_ext = 6;
    int jobs = 1;
    u64 max_points = 400'000'000;
};

struct LevelStats {
    int k = 0;
    u64 points = 0;
    u64 good = 0;     // good records rational over F_{p^k}
    u64 trivial = 0;  // trivial records at this level
    u64 new_good = 0; // good points of exact degree k
};

struct CountReport {
    u64 good = 0;           // distinct good points found (over all levels)
    bool stabilized = false;
    int stabilized_at = -1; // level at which the count stabilized
    u64 bezout = 0;         // product of the equation degrees 1*3*...*(2a-3)
    std::vector<LevelStats> levels;
};

// Runs solve_brute for k = 1, 2, ... and counts distinct good points of the
// closure via the exact-degree recursion n_k = N_k - sum_{d | k, d < k} n_d.
// Stabilized when the cumulative count reaches the Bezout bound, or when it
// is positive and unchanged across two consecutive degrees; otherwise the
// report is inconclusive (stabilized = false).
CountReport count_good(u64 p, u64 h, const ResidueType& a, const CountPolicy& policy = {});

// ---------------------------------------------------------------------------
// explicit differential constructions
// ---------------------------------------------------------------------------

struct SingleZeroForm {
    Field field;            // least F_{p^k} with h | p^k - 1
    DifferentialForm omega;  // h dz / (z^{h+1} - z)
    std::vector<Point> poles;
    std::vector<u64> residues;  // mod p, aligned with poles
};

// Logarithmic form with h+1 simple poles and a single zero of order h-1 at
// infinity; requires gcd(h, p) = 1.
SingleZeroForm omega_single_zero(u64 p, u64 h);

struct FeasibilityWitness {
    Field field;
    std::vector<Point> poles;  // aligned with the type entries
    DifferentialForm omega;
};

// Brute-force search over pole configurations z in F_{p^k}, k <= max_ext,
// for a logarithmic sum a_i dz/(z - z_i) with a single zero at infinity.
// Requires sum a_i = 0 mod p. Poles are normalized to z_1 = 0, z_2 = 1.
std::optional<FeasibilityWitness> residue_feasible(u64 p, const ResidueType& a, int max_ext);

// The hard-coded contradiction certifying the (1,1,4,4) infeasibility at
// p = 5: poles 0, 1, l, m with l+m = 1 and lm = 0 force l or m into {0, 1},
// i.e. X^2 - X has no roots outside {0, 1} in any field.
bool symbolic_contradiction_1144(u64 p);

// Coefficient of z^{p-1} in (z^2-1)^{p-a1} (z^2-mu)^{p-a2}, as a polynomial
// in mu over F_p. Requires 1 < a2 <= a1 < p and p+1 <= a1+a2 <= (3p-1)/2.
Polynomial eta_half_coefficient(u64 p, u64 alpha1, u64 alpha2);

// ---------------------------------------------------------------------------
// certificate tree builders
// ---------------------------------------------------------------------------

struct LargeHPlan {
    u64 p = 0, h = 0;
    u64 alpha = 0, beta = 0;
    int case_tag = 0;              // 1 or 2
    u64 alpha1 = 0, alpha2 = 0;    // case 2 split
};

// h odd, h > p, gcd(h, p) = 1: the unique decomposition
// h+1 = 2(alpha + p beta) with (p+3)/2 <= alpha <= (3p-1)/2.
LargeHPlan plan_large_h(u64 p, u64 h);

// Two-level certificate tree for h > p (different 0, conductor h).
DecoratedTree build_large_h_tree(u64 p, u64 h, const Rat& delta_mid = Rat(1, 2));

// Single-component certificate tree for odd 3 <= h < p via the elimination.
DecoratedTree build_small_h_tree(u64 p, u64 h);

}  // namespace charp
