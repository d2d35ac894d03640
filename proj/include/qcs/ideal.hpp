#pragma once

#include "qcs/order.hpp"

namespace qcs {

struct RightIdeal {
    ZLat L;
    OrderPtr O;  // right order
    ZLat nrd;
};

ZLat reduced_norm_ideal(const QuatAlgebra& A, const ZLat& I);
RightIdeal make_right_ideal(const OrderPtr& O, const ZLat& L, bool check = true);
RightIdeal unit_ideal(const OrderPtr& O);
RightIdeal principal_ideal(const OrderPtr& O, const QElt& g);

ZLat ideal_product(const QuatAlgebra& A, const ZLat& I, const ZLat& J);
ZLat ideal_inverse_lat(const QuatAlgebra& A, const ZLat& I);  // conj(I) / nrd(I)
bool is_invertible(const QuatAlgebra& A, const ZLat& I);
bool is_primitive(const RightIdeal& I);

// Element of I whose reduced norm has the same P-valuation as nrd(I).
QElt local_generator(const QuatAlgebra& A, const ZLat& I, const ZLat& nrdI, const Prime& P, uint64_t seed = 1);

RightIdeal ideal_of_norm(const OrderPtr& O, const Factored& a, uint64_t seed = 1);

std::vector<std::array<FElt, 2>> p1_points(const Field& F, const Factored& a);

std::vector<RightIdeal> neighbors(const RightIdeal& I, const Prime& P, const LocalSplitting& S);
std::vector<RightIdeal> neighbors(const RightIdeal& I, const Prime& P);

}  // namespace qcs
