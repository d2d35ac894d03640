#pragma once

#include "qcs/field.hpp"

namespace qcs {

// Fundamental discriminant of Q(sqrt d).
long fundamental_discriminant(long d);

// Fundamental unit (t + u sqrt(D))/2 of discriminant D > 0, from the continued fraction
// of (b + sqrt D)/2; returns {t, u, norm}.
struct QuadUnit {
    Int t, u;
    int norm;
};
QuadUnit fundamental_unit_cf(long D);

// Number of cycles of reduced primitive indefinite forms, i.e. the narrow class number.
long narrow_class_number_forms(long D);

// Number of reduced primitive positive definite forms of discriminant D < 0.
long class_number_imag(long D);

}  // namespace qcs
