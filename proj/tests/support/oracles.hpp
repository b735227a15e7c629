// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Independent reference computations used only by tests. Nothing here calls
// into dsrace's closed forms.

#ifndef DSRACE_TESTS_ORACLES_HPP
#define DSRACE_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsrace::oracle {

/// Win probabilities q_0..q_N of the ruin game, from the one-step recurrence
/// q_j = w q_{j+1} + (1 - w) q_{j-1} with q_0 = 0, q_N = 1, solved as a
/// tridiagonal linear system (Thomas algorithm, long double).
inline std::vector<long double> absorbing_chain(std::uint64_t target, long double win)
{
    if (target == 0) throw std::invalid_argument("target must be >= 1");
    const long double loss = 1.0L - win;
    std::vector<long double> q(target + 1, 0.0L);
    q[target] = 1.0L;
    const std::size_t interior = target - 1;
    if (interior == 0) return q;

    // Row j (1..N-1):  -loss * q_{j-1} + q_j - win * q_{j+1} = 0
    std::vector<long double> c_prime(interior), d_prime(interior);
    for (std::size_t r = 0; r < interior; ++r) {
        const long double a = r == 0 ? 0.0L : -loss;
        const long double b = 1.0L;
        const long double c = r + 1 == interior ? 0.0L : -win;
        const long double d = r + 1 == interior ? win : 0.0L;  // boundary q_N = 1 moved to rhs
        const long double denom = b - (r == 0 ? 0.0L : a * c_prime[r - 1]);
        c_prime[r] = c / denom;
        d_prime[r] = (d - (r == 0 ? 0.0L : a * d_prime[r - 1])) / denom;
    }
    q[interior] = d_prime[interior - 1];
    for (std::size_t r = interior - 1; r-- > 0;) {
        q[r + 1] = d_prime[r] - c_prime[r] * q[r + 2];
    }
    return q;
}

inline long double absorbing_chain_win(std::uint64_t fortune, std::uint64_t target, long double win)
{
    return absorbing_chain(target, win).at(fortune);
}

/// P(K = k) for K = attacker blocks before the z-th honest block, honest
/// block probability p: C(k + z - 1, k) p^z (1 - p)^k.
inline long double negative_binomial_pmf(std::uint64_t k, std::uint64_t z, long double p)
{
    long double term = std::pow(p, static_cast<long double>(z));
    for (std::uint64_t j = 1; j <= k; ++j) {
        term *= (1.0L - p) * static_cast<long double>(j + z - 1) / static_cast<long double>(j);
    }
    return term;
}

/// Exact success probability of the simulated race: negative binomial
/// waiting phase, then a ruin game with barriers at 0 and d0 + y where
/// d0 = z + 1 - k and y = z + surplus - k.
inline long double exact_race_success(long double q, std::uint64_t z, std::uint64_t surplus)
{
    const long double p = 1.0L - q;
    long double head = 0.0L;
    long double total = 0.0L;
    for (std::uint64_t k = 0; k <= z; ++k) {
        const long double w = negative_binomial_pmf(k, z, p);
        head += w;
        const std::uint64_t deficit = z + 1 - k;
        const std::uint64_t budget = z + surplus - k;
        total += w * absorbing_chain_win(budget, budget + deficit, q);
    }
    return total + (1.0L - head);
}

enum class Formula { Original, Corrected, Budgeted };

/// Literal transcription of the attack formulas:
///   1 - sum_k lambda^k e^-lambda / k! * (1 - catch_up)
/// with k! formed by direct multiplication and powers through std::pow.
/// Only sensible for moderate z (k! overflows long double near k = 1750).
inline long double naive_attack_success(long double q, std::uint64_t z, Formula formula,
                                        std::uint64_t surplus = 35)
{
    const long double p = 1.0L - q;
    const long double lambda = static_cast<long double>(z) * q / p;
    const std::uint64_t last = formula == Formula::Original ? z : z + 1;
    long double sum = 0.0L;
    long double factorial = 1.0L;
    for (std::uint64_t k = 0; k <= last; ++k) {
        if (k > 0) factorial *= static_cast<long double>(k);
        const long double pmf =
            std::pow(lambda, static_cast<long double>(k)) * std::exp(-lambda) / factorial;
        const std::uint64_t deficit = last - k;
        long double catch_up = 1.0L;
        if (formula == Formula::Budgeted) {
            if (deficit > 0) {
                const auto y = static_cast<long double>(z + surplus - k);
                const auto d = static_cast<long double>(deficit);
                if (std::fabs(p - q) <= 1e-12L) {
                    catch_up = y / (y + d);
                } else {
                    const long double r = p / q;
                    catch_up = (1.0L - std::pow(r, y)) / (1.0L - std::pow(r, y + d));
                }
            }
        } else if (p > q) {
            catch_up = std::pow(q / p, static_cast<long double>(deficit));
        }
        sum += pmf * (1.0L - catch_up);
    }
    return 1.0L - sum;
}

inline double binomial_se(double m, std::uint64_t n)
{
    return std::sqrt(m * (1.0 - m) / static_cast<double>(n));
}

}  // namespace dsrace::oracle

#endif  // DSRACE_TESTS_ORACLES_HPP
