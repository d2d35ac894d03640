#pragma once

#include "qcs/ideal.hpp"
#include "qcs/mass.hpp"

namespace qcs {

struct PrincipalConstants {
    double eps = 0, C = 0;
};

// Generator xi with I = xi O_R(I), or absence.
std::optional<QElt> is_principal_definite(const QuatAlgebra& A, const ZLat& I, const ZLat& nrdI,
                                          PrincipalConstants* consts = nullptr);
std::optional<QElt> is_principal_definite(const RightIdeal& I);
// xi with I = xi J.
std::optional<QElt> is_isomorphic(const RightIdeal& I, const RightIdeal& J);

long unit_index(const QuatAlgebra& A, const ZLat& O);
std::vector<long> theta_prefix(const QuatAlgebra& A, const ZLat& L, long T);
long default_theta_length(const Field& F);

struct ClassRep {
    RightIdeal I;
    OrderPtr left;
    long unit_index = 0;
    std::vector<long> theta;
    int nrd_class = 0;
    int type = -1;  // index into ClassSetResult::types
};

struct OrderType {
    OrderPtr order;
    ZLat connecting;  // integral (order, O)-ideal
    long twosided = 1;
    long unit_index = 0;
};

struct ClassSetResult {
    OrderPtr O;
    std::vector<Prime> S;
    std::vector<ClassRep> reps;
    std::vector<std::vector<int>> edges;  // per rep: classes of its S-neighbours
    Rat mass, mass_sum;
    std::vector<OrderType> types;
    bool complete = true;  // false when stopped early by stop_above
};

struct ClassSetOptions {
    std::vector<Prime> S;     // auto-selected when empty
    bool full_graph = false;  // expand every class for the adjacency list
    long stop_above = 0;      // abort once more than this many classes are found (0: never)
    long theta_length = 0;    // 0: default
};

std::vector<Prime> choose_neighbor_primes(const Order& O);
ClassSetResult class_set_definite(const OrderPtr& O, const ClassSetOptions& opt = {});
ClassSetResult class_set_and_conjugacy(const OrderPtr& O, const ClassSetOptions& opt = {});

// Diameter of the neighbour graph given as adjacency lists; -1 when disconnected.
int graph_diameter(const std::vector<std::vector<int>>& edges);
// ceil(log(H-1) / log(k/lambda)) with k = prod(Np+1), lambda = 2^#S prod sqrt(Np); absent unless H >= 3
// and every p in S has Np > 4 and is prime to d_F, the discriminant and the level.
std::optional<int> chung_diameter_bound(const ClassSetResult& R);

// Two-sided ideal classes of O (as lattices), with O first.
std::vector<ZLat> twosided_classes(const OrderPtr& O);
std::optional<QElt> is_conjugate(const OrderPtr& O, const OrderPtr& Op);

// Indefinite algebras.
bool is_sinf_principal(const Field& F, const ZLat& a, const std::vector<int>& places);
std::vector<Prime> sinf_class_reps(const Field& F, const std::vector<int>& places, const ZLat& avoid);
ClassSetResult class_set_indefinite(const OrderPtr& O);
std::vector<OrderPtr> conj_class_set_indefinite(const OrderPtr& O);
std::optional<QElt> is_principal_indefinite(const RightIdeal& I, int max_iterations = 64);

// Canonical Eichler order of discriminant D and level N in a definite algebra over F.
OrderPtr definite_eichler_order(FieldPtr F, const Factored& D, const Factored& N);
std::optional<QElt> is_principal(const RightIdeal& I);

struct ClassNumberResult {
    Int h = 0;
    bool complete = true;  // false: enumeration stopped with h > stop_above
    std::optional<Int> formula;
    std::optional<long> enumerated;
    MassValue mass;
    std::optional<ClassSetResult> classes;
};

// Class number of a definite Eichler order of discriminant D and level N. The formula is used when
// elliptic data is available; enumeration runs when requested or when no formula applies, and a
// disagreement between the two is an Internal error.
ClassNumberResult class_number(FieldPtr F, const Factored& D, const Factored& N, bool enumerate = false,
                               long stop_above = 0);

}  // namespace qcs
