#pragma once

#include "qcs/classset.hpp"

#include <functional>

namespace qcs {

struct TableRow {
    int n = 1;
    Int dF, D, N;
    long h = 0;
    std::string ideals;  // disambiguation: "D=...;N=..." in prime-norm notation
    bool by_formula = false, by_enumeration = false;
};

// Images of the power generator under the automorphisms of F (identity first).
std::vector<FElt> field_automorphisms(const Field& F);
FElt apply_automorphism(const Field& F, const FElt& image, const FElt& x);
Prime conjugate_prime(const Field& F, const FElt& image, const Prime& P);

struct TableOptions {
    int max_h = 2;
    // Called for every emitted row with the enumerated class set.
    std::function<void(const TableRow&, const ClassSetResult&)> on_row;
};

// Definite Eichler orders over F with h <= max_h, up to field automorphisms.
std::vector<TableRow> table_rows(FieldPtr F, const TableOptions& opt);
std::vector<TableRow> reproduce_tables(const std::vector<FieldPtr>& fields, const TableOptions& opt);
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace qcs
