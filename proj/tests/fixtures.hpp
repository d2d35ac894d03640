#pragma once

#include "qcs/io.hpp"

#include <map>

#ifndef QCS_SOURCE_DIR
#define QCS_SOURCE_DIR "."
#endif

inline std::string source_path(const std::string& rel) { return std::string(QCS_SOURCE_DIR) + "/" + rel; }

inline qcs::FieldPtr fixture(const std::string& name) {
    static std::map<std::string, qcs::FieldPtr> cache;
    auto& F = cache[name];
    if (!F) F = qcs::load_field(source_path("data/fields/" + name + ".json"));
    return F;
}

inline qcs::Factored fac(const qcs::Field& F, const std::string& s) { return qcs::parse_factored(F, s); }
