#pragma once

// Program-to-program constructions. Every generator returns an ordinary
// Program; machines that have to simulate their argument carry its code in
// the constant table and use SIM / RUN / QRY on it.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bssvm/polynomial.hpp"
#include "bssvm/program.hpp"

namespace bssvm {

// --- limit lemma --------------------------------------------------------

/// Searcher used by weak_to_strong. On input (x, K, k) it walks m = K+1,
/// K+2, ... and halts as soon as y_m has another dimension than y_K or
/// |y_K - y_m| > 2^-k + 2^-m.
Program limit_searcher(const Program& weak);

/// For k = 1, 2, ... raises K (starting from max(K, k)) until the oracle
/// says limit_searcher does not halt on (x, K, k), then prints y_K.
Program weak_to_strong(const Program& weak);

/// Simulation levels: at level n the argument is simulated with its oracle
/// queries answered "halts within m steps"; m grows until the first n
/// outputs satisfy the pairwise strong bound, then y_n is printed. m is kept
/// across levels.
Program strong_oracle_to_weak(const Program& strong);

// --- evaluation ----------------------------------------------------------

/// epi halts on (x, t) iff t > f(x), hypo halts on (x, t) iff t < f(x).
/// Level n dovetails over q in h*Z (h = 2^-n, order 0, h, -h, 2h, ...) and
/// step counts, and prints the first q with both epi(x, q+h) and
/// hypo(x, q-h) halted, so |q - f(x)| < 2^-n.
Program epihypo_to_strong(const Program& epi, const Program& hypo);

/// Runs a strong machine for a characteristic function to its second
/// output and halts printing 1 if it exceeds 1/2, else 0.
Program strong_charfn_to_decider(const Program& strong);

/// Host-side description of polynomial approximations p_{n,m} of a
/// continuous f on [-m, m]^dim with error 2^-n, plus optional moduli.
struct ApproximationScheme {
    std::string name;
    std::size_t dim = 1;
    std::function<Polynomial(std::uint64_t n, std::uint64_t m)> poly;
    /// mu(n, m): |y - y'| <= 2^-mu on [-m, m]^dim implies
    /// |p_{n,m}(y) - p_{n,m}(y')| <= 2^-n.
    std::function<std::uint64_t(std::uint64_t n, std::uint64_t m)> modulus;
    /// Emitted programs cover n <= n_max and m <= m_max and then halt.
    std::uint64_t n_max = 20;
    std::uint64_t m_max = 4;
};

/// identity, square, double, exp.
std::vector<std::string> scheme_names();
/// Throws std::out_of_range for unknown names.
ApproximationScheme named_scheme(const std::string& name);

/// Finds the least m <= m_max with x in [-m, m]^dim and prints p_{n,m}(x)
/// for n = 1 .. n_max. Inputs outside [-m_max, m_max]^dim loop silently.
Program continuous_eval(const ApproximationScheme& scheme);

/// Output n is p_{n+1,m+1}(y') with y' the output of g at precision
/// mu_{n+1,m+1}, where m bounds the first output of g plus one.
Program compose_strong_continuous(const Program& g, const ApproximationScheme& scheme);

// --- arithmetical hierarchy ------------------------------------------------

/// Prints |y_n - y_m| (1-norm) for the pairs (n, m) in Cantor diagonal
/// order: diagonal s = 0, 1, ..., first coordinate ascending.
Program cauchy_transform(const Program& p);
/// The (n, m) behind the k-th output (1-based) of cauchy_transform.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

enum class Quantifiers { Sigma2, Sigma3 };

/// A total decider: halts on (x, y, z) resp. (x, u, v, w) with last output
/// 1 for members and 0 otherwise. Integer arguments are passed as reals.
struct DeciderSpec {
    Program program;
    Quantifiers arity = Quantifiers::Sigma2;
};

/// y = 1, 2, ...: searches z = 1, 2, ... with (x, y, z) not in W, prints y
/// on success and moves to y + 1. Bounded output iff some y has all z in W.
Program sigma2_to_boundedness(const DeciderSpec& w);

/// Dovetails the subprocesses u = 1, 2, ...: each keeps (v, w), prints 0
/// per check and 2^-u when (x, u, v, w) is in W (then v + 1, w = 1).
Program sigma3_to_nonconvergence(const DeciderSpec& w);

/// enumerator on (j, i) halts with output (flag, a_1..a_d, b_1..b_d): the
/// i-th open box of the complement of A_j (flag 0 for no box). Stage n
/// advances whenever x lies in a box of A_n's complement; the stage number
/// is printed after every check, so the output is bounded iff x is in some
/// A_j.
Program sigma2_to_weak_semidecision(const Program& enumerator);

}  // namespace bssvm
