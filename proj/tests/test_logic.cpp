#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pqbit/logic.hpp"
#include "pqbit/rng.hpp"

using namespace pqbit;

namespace {

const PBit kOrder[4] = {kTrue, kFalse, kBoth, kNeither};

char code(PBit v) { return pbit_code(v); }

// Frozen coordinate-rule tables, rows a in {T,F,B,N}, columns b in {T,F,B,N}.
const char kMeetTable[4][5] = {"TFBN", "FFFF", "BFBF", "NFFN"};
const char kJoinTable[4][5] = {"TTTT", "TFBN", "TBBT", "TNTN"};
const char kImplPrintedTable[4][5] = {"TNTN", "TBBT", "TFBN", "TTTT"};
const char kImplStandardTable[4][5] = {"TFBN", "TTTT", "TFBN", "TTTT"};

}  // namespace

TEST_CASE("crisp meet, join, impl match the frozen tables") {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const PBit a = kOrder[i];
            const PBit b = kOrder[j];
            CHECK(code(cd_meet(a, b)) == kMeetTable[i][j]);
            CHECK(code(cd_join(a, b)) == kJoinTable[i][j]);
            CHECK(code(cd_impl(a, b, ImplVariant::Printed)) == kImplPrintedTable[i][j]);
            CHECK(code(cd_impl(a, b, ImplVariant::Standard)) == kImplStandardTable[i][j]);
        }
    }
}

TEST_CASE("negation and fixed points") {
    CHECK(cd_neg(kTrue) == kFalse);
    CHECK(cd_neg(kFalse) == kTrue);
    CHECK(cd_neg(kBoth) == kBoth);
    CHECK(cd_neg(kNeither) == kNeither);
    for (PBit v : kOrder) CHECK(cd_neg(cd_neg(v)) == v);
}

TEST_CASE("crisp lattice properties") {
    for (PBit a : kOrder) {
        CHECK(cd_meet(a, a) == a);
        CHECK(cd_join(a, a) == a);
        for (PBit b : kOrder) {
            CHECK(cd_meet(a, b) == cd_meet(b, a));
            CHECK(cd_join(a, b) == cd_join(b, a));
            // De Morgan under the coordinate rules
            CHECK(cd_neg(cd_meet(a, b)) == cd_join(cd_neg(a), cd_neg(b)));
            CHECK(cd_neg(cd_join(a, b)) == cd_meet(cd_neg(a), cd_neg(b)));
            for (PBit c : kOrder) {
                CHECK(cd_meet(a, cd_meet(b, c)) == cd_meet(cd_meet(a, b), c));
                CHECK(cd_join(a, cd_join(b, c)) == cd_join(cd_join(a, b), c));
                CHECK(cd_meet(a, cd_join(b, c)) == cd_join(cd_meet(a, b), cd_meet(a, c)));
            }
        }
    }
}

TEST_CASE("restriction to {T,F} is classical") {
    const PBit classical[2] = {kTrue, kFalse};
    for (PBit a : classical) {
        for (PBit b : classical) {
            CHECK(cd_meet(a, b) == ((a == kTrue && b == kTrue) ? kTrue : kFalse));
            CHECK(cd_join(a, b) == ((a == kTrue || b == kTrue) ? kTrue : kFalse));
            const PBit expect = (a == kTrue && b == kFalse) ? kFalse : kTrue;
            CHECK(cd_impl(a, b, ImplVariant::Standard) == expect);
        }
    }
    // The printed variant is not classical on {T, F}: its second coordinate
    // is x' & y', so (T, F) loses its negative evidence and (F, F) keeps it.
    CHECK(cd_impl(kTrue, kTrue, ImplVariant::Printed) == kTrue);
    CHECK(cd_impl(kTrue, kFalse, ImplVariant::Printed) == kNeither);
    CHECK(cd_impl(kFalse, kTrue, ImplVariant::Printed) == kTrue);
    CHECK(cd_impl(kFalse, kFalse, ImplVariant::Printed) == kBoth);
}

TEST_CASE("pbit codes round trip") {
    for (PBit v : kOrder) CHECK(pbit_from_code(pbit_code(v)) == v);
    CHECK_THROWS_AS(pbit_from_code('X'), std::invalid_argument);
}

TEST_CASE("evidence counting is coordinatewise") {
    std::vector<PBit> obs = {kTrue, kTrue, kBoth, kNeither, kFalse};
    const Evidence e = aggregate(obs);
    CHECK(e.n_plus == 3);   // T, T, B
    CHECK(e.n_minus == 2);  // B, F
    CHECK(e.total == 5);
    const TruthPair w = normalize(e);
    CHECK(w.w_plus == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(w.w_minus == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("evidence validation") {
    CHECK_NOTHROW(validate(Evidence{0, 0, 1}));
    CHECK_NOTHROW(validate(Evidence{5, 5, 5}));
    CHECK_THROWS_AS(validate(Evidence{-1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Evidence{0, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Evidence{0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(aggregate(std::vector<PBit>{}), std::invalid_argument);
}

TEST_CASE("truth pair validation and embedding") {
    CHECK_NOTHROW(validate(TruthPair{1.0, 1.0}));
    CHECK_THROWS_AS(validate(TruthPair{-0.1, 0.5}), std::domain_error);
    CHECK_THROWS_AS(validate(TruthPair{0.5, 1.1}), std::domain_error);
    CHECK(embed(kTrue).w_plus == 1.0);
    CHECK(embed(kTrue).w_minus == 0.0);
    CHECK(embed(kBoth).w_plus == 1.0);
    CHECK(embed(kBoth).w_minus == 1.0);
    CHECK(embed(kNeither).w_plus == 0.0);
    CHECK(embed(kNeither).w_minus == 0.0);
}

TEST_CASE("fuzzy connectives restrict to the crisp tables") {
    const TNormFamily fams[] = {TNormFamily::min_max(), TNormFamily::product(),
                                TNormFamily::schweizer_sklar(-2.0)};
    for (const auto& fam : fams) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const TruthPair a = embed(kOrder[i]);
                const TruthPair b = embed(kOrder[j]);
                const TruthPair m = fuzzy_meet(a, b, fam);
                const TruthPair jn = fuzzy_join(a, b, fam);
                CHECK(m.w_plus == embed(cd_meet(kOrder[i], kOrder[j])).w_plus);
                CHECK(m.w_minus == embed(cd_meet(kOrder[i], kOrder[j])).w_minus);
                CHECK(jn.w_plus == embed(cd_join(kOrder[i], kOrder[j])).w_plus);
                CHECK(jn.w_minus == embed(cd_join(kOrder[i], kOrder[j])).w_minus);
            }
        }
        for (int i = 0; i < 4; ++i) {
            const TruthPair n = fuzzy_neg(embed(kOrder[i]));
            CHECK(n.w_plus == embed(cd_neg(kOrder[i])).w_plus);
            CHECK(n.w_minus == embed(cd_neg(kOrder[i])).w_minus);
        }
    }
}

TEST_CASE("fuzzy meet and join coordinates") {
    const TruthPair a{0.7, 0.2};
    const TruthPair b{0.5, 0.6};
    const TNormFamily prod = TNormFamily::product();
    const TruthPair m = fuzzy_meet(a, b, prod);
    CHECK(m.w_plus == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(m.w_minus == doctest::Approx(0.2 + 0.6 - 0.12).epsilon(1e-15));
    const TruthPair j = fuzzy_join(a, b, prod);
    CHECK(j.w_plus == doctest::Approx(0.7 + 0.5 - 0.35).epsilon(1e-15));
    CHECK(j.w_minus == doctest::Approx(0.12).epsilon(1e-15));
}

TEST_CASE("negations") {
    const TruthPair a{0.7, 0.2};
    const TruthPair n = fuzzy_neg(a);
    CHECK(n.w_plus == 0.2);
    CHECK(n.w_minus == 0.7);
    const TruthPair nn = fuzzy_neg(n);
    CHECK(nn.w_plus == a.w_plus);
    CHECK(nn.w_minus == a.w_minus);
    const TruthPair c = coord_neg(a);
    CHECK(c.w_plus == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(c.w_minus == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("De Morgan swap law is bitwise exact") {
    rng::Stream stream(33);
    const TNormFamily fams[] = {TNormFamily::min_max(), TNormFamily::product(),
                                TNormFamily::schweizer_sklar(-1.0), TNormFamily::schweizer_sklar(-32.0)};
    for (const auto& fam : fams) {
        for (int i = 0; i < 10000; ++i) {
            const TruthPair a{stream.uniform01(), stream.uniform01()};
            const TruthPair b{stream.uniform01(), stream.uniform01()};
            const TruthPair lhs = fuzzy_neg(fuzzy_meet(a, b, fam));
            const TruthPair rhs = fuzzy_join(fuzzy_neg(a), fuzzy_neg(b), fam);
            CHECK(lhs.w_plus == rhs.w_plus);
            CHECK(lhs.w_minus == rhs.w_minus);
            const TruthPair lhs2 = fuzzy_neg(fuzzy_join(a, b, fam));
            const TruthPair rhs2 = fuzzy_meet(fuzzy_neg(a), fuzzy_neg(b), fam);
            CHECK(lhs2.w_plus == rhs2.w_plus);
            CHECK(lhs2.w_minus == rhs2.w_minus);
        }
    }
}

TEST_CASE("fuzzy implication") {
    const TNormFamily prod = TNormFamily::product();
    const TruthPair a{0.8, 0.3};
    const TruthPair b{0.4, 0.5};
    const TruthPair printed = fuzzy_impl(a, b, prod, ImplVariant::Printed);
    CHECK(printed.w_plus == doctest::Approx(0.5).epsilon(1e-15));   // residuum 0.4/0.8
    CHECK(printed.w_minus == doctest::Approx(0.15).epsilon(1e-15)); // 0.3 * 0.5
    const TruthPair standard = fuzzy_impl(a, b, prod, ImplVariant::Standard);
    CHECK(standard.w_plus == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(standard.w_minus == doctest::Approx(0.4).epsilon(1e-15)); // 0.8 * 0.5
    // restriction to classical inputs
    for (PBit x : {kTrue, kFalse}) {
        for (PBit y : {kTrue, kFalse}) {
            const TruthPair r = fuzzy_impl(embed(x), embed(y), prod, ImplVariant::Printed);
            const TruthPair expect = embed(cd_impl(x, y, ImplVariant::Printed));
            CHECK(r.w_plus == expect.w_plus);
            CHECK(r.w_minus == expect.w_minus);
        }
    }
}
