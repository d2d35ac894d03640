#pragma once

#include "qcs/order.hpp"

namespace qcs {

struct ZetaInfo {
    long Q = 0;         // lcm of q with [F(zeta_2q):F] = 2
    long P = 0;         // Euler product truncation point
    Interval interval;  // certified enclosure of |zeta_F(-1)|
    int doublings = 0;
};

struct MassValue {
    Rat mass, zeta, phi, psi;
    Int hF;
    struct Term {
        int q;
        Rat e;
        Rat weight;
    };
    std::vector<Term> corrections;
    std::optional<Int> h;
};

long zeta_denominator_bound(const Field& F);
Rat zeta_minus_one(const Field& F, ZetaInfo* info = nullptr, int precision_bits = 128);

// Validates the discriminant/level pair of a totally definite algebra.
void check_definite_pair(const Field& F, const Factored& D, const Factored& N);
MassValue mass(const Field& F, const Factored& D, const Factored& N);
// Artin symbol (K/P) of the CM extension, for Z_K = Z_F[x]/(g).
int artin_symbol(const Field& F, const CMExtension& K, const Prime& P);
// e_q for squarefree N; absent when a local count is not covered by the formulas.
std::optional<std::vector<std::pair<int, Rat>>> embedding_numbers(const Field& F, const Factored& D, const Factored& N);
// Mass plus corrections; h is set when the formula path applies.
MassValue class_number_formula(const Field& F, const Factored& D, const Factored& N);

}  // namespace qcs
