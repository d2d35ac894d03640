#include "fixtures.hpp"
#include "props.hpp"

#include <doctest.h>

#include <complex>

using namespace qcs;

TEST_CASE("zeta at -1 over Q") { CHECK(zeta_minus_one(*rational_field()) == Rat(-1, 12)); }

TEST_CASE("zeta at -1 of real quadratic fields agrees with Siegel's formula") {
    for (auto [name, D] : std::vector<std::pair<std::string, long>>{{"d5", 5}, {"d8", 8}, {"d12", 12}, {"d13", 13}, {"d17", 17}}) {
        ZetaInfo info;
        Rat z = zeta_minus_one(*fixture(name), &info);
        CHECK(z == props::siegel_zeta(D));
        CHECK(info.interval.lo <= z);
        CHECK(z <= info.interval.hi);
    }
    CHECK(props::siegel_zeta(5) == Rat(1, 30));
    CHECK(props::siegel_zeta(8) == Rat(1, 12));
    for (long d : {21, 6, 7, 29, 33, 41}) {
        auto F = quadratic_field(d);
        CHECK(zeta_minus_one(*F) == props::siegel_zeta(F->disc.get_si()));
    }
}

TEST_CASE("zeta at -1 of the cyclic cubic field of conductor 7") {
    // zeta(-1) L(-1, chi) L(-1, chibar) with L(-1, chi) = -B_{2,chi}/2
    const double pi = std::acos(-1.0);
    std::complex<double> w = std::polar(1.0, 2 * pi / 3), B2 = 0;
    int g = 3, a = 1;  // 3 generates (Z/7)^*
    for (int k = 0; k < 6; ++k, a = a * g % 7) {
        double x = a / 7.0;
        B2 += std::pow(w, k) * 7.0 * (x * x - x + 1.0 / 6);
    }
    double oracle = -1.0 / 12 * std::norm(B2) / 4;
    Rat z = zeta_minus_one(*fixture("d49"));
    CHECK(z == Rat(-1, 21));
    CHECK(std::abs(z.get_d() - oracle) < 1e-12);
}

TEST_CASE("fixtures carry consistent invariants") {
    for (auto name : {"d5", "d8", "d12", "d13", "d17", "d49"}) {
        auto F = fixture(name);
        CHECK(F->units.size() == size_t(F->n - 1));
        CHECK(F->ncl.size() % F->cl.size() == 0);
        CHECK(bool(is_principal_zf(*F, F->ncl.reps[0], true)));
    }
    CHECK(fixture("d12")->cl.size() == 1);
    CHECK(fixture("d12")->ncl.size() == 2);
    CHECK(fixture("d5")->disc == 5);
    CHECK(fixture("d49")->disc == 49);
}

TEST_CASE("field loader rejects invalid data") {
    json good = field_to_json(*fixture("d5"));
    CHECK_NOTHROW(field_from_json(good));
    json j = good;
    j["poly"] = {1, 0, 1};  // x^2 + 1
    CHECK_THROWS_AS(field_from_json(j), Error);
    j = good;
    j["units"] = json::array();
    CHECK_THROWS_AS(field_from_json(j), Error);
    j = good;
    j["disc"] = 7;
    CHECK_THROWS_AS(field_from_json(j), Error);
    j = good;
    j["unit_signs"] = {{1, 1}};
    CHECK_THROWS_AS(field_from_json(j), Error);
    try {
        load_field(source_path("data/fields/absent.json"));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::FixtureMissing);
    }
}

TEST_CASE("prime decomposition and class groups") {
    auto F = fixture("d5");
    CHECK(primes_above(*F, Int(11)).size() == 2);
    CHECK(primes_above(*F, Int(2))[0].norm == 4);
    CHECK(primes_above(*F, Int(5))[0].e == 2);
    auto F17 = fixture("d17");
    CHECK(primes_above(*F17, Int(2)).size() == 2);
    ZLat a = ideal_mul(*F, primes_above(*F, Int(11))[0].P, primes_above(*F, Int(11))[1].P);
    CHECK(a == ideal_principal(*F, f_int(*F, 11)));
    CHECK(factor_ideal(*F, a).size() == 2);
}
