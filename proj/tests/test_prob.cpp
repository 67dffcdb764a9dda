#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "wtgf/prob.hpp"

using namespace wtgf;
using namespace wtgf::prob;
using testutil::h2;

namespace {

Var bin(const char* name) { return Var{name, Alphabet::binary()}; }

} // namespace

TEST_CASE("alphabet basics") {
    Alphabet a({"a", "b", "c"});
    CHECK(a.size() == 3);
    CHECK(a.symbol(1) == "b");
    CHECK_THROWS_AS(Alphabet({}), argument_error);
    CHECK_THROWS_AS(Alphabet({"x", "x"}), argument_error);
    CHECK(Alphabet::degenerate().size() == 1);
    CHECK(Alphabet::indexed("u", 4).symbol(3) == "u3");
}

TEST_CASE("joint pmf construction and validation") {
    auto p = JointPmf({bin("X")}, {0.25, 0.75});
    CHECK(p.cells() == 2);
    CHECK(p.mass()[1] == doctest::Approx(0.75));

    // renormalizes below tolerance
    auto q = JointPmf({bin("X")}, {0.25 + 4e-10, 0.75});
    CHECK(q.mass()[0] + q.mass()[1] == doctest::Approx(1.0).epsilon(1e-15));

    // rejects above tolerance
    CHECK_THROWS_AS(JointPmf({bin("X")}, {0.3, 0.75}), argument_error);
    // rejects negatives
    CHECK_THROWS_AS(JointPmf({bin("X")}, {-0.1, 1.1}), argument_error);
    // rejects duplicate names
    CHECK_THROWS_AS(JointPmf({bin("X"), bin("X")}, {0.25, 0.25, 0.25, 0.25}),
                    argument_error);
    // rejects wrong cell count
    CHECK_THROWS_AS(JointPmf({bin("X")}, {1.0}), argument_error);
}

TEST_CASE("entropy examples") {
    auto u4 = JointPmf::uniform({Var{"X", Alphabet::indexed("s", 4)}});
    CHECK(entropy(u4, {"X"}) == doctest::Approx(2.0).epsilon(1e-12));

    auto p = JointPmf({bin("X")}, {0.2, 0.8});
    CHECK(entropy(p, {"X"}) == doctest::Approx(0.721928).epsilon(1e-6));
    CHECK(entropy(p, {"X"}) == doctest::Approx(h2(0.2)).epsilon(1e-12));

    auto d = JointPmf({bin("X")}, {1.0, 0.0});
    CHECK(entropy(d, {"X"}) == 0.0);

    CHECK_THROWS_AS(entropy(p, {"nope"}), name_error);
}

TEST_CASE("mutual information examples") {
    // independent binary pair
    auto indep = JointPmf::uniform({bin("X"), bin("Y")});
    CHECK(mutual_information(indep, {"X"}, {"Y"}) == doctest::Approx(0.0).epsilon(1e-12));

    // X = Y uniform
    auto eq = JointPmf({bin("X"), bin("Y")}, {0.5, 0.0, 0.0, 0.5});
    CHECK(mutual_information(eq, {"X"}, {"Y"}) == doctest::Approx(1.0).epsilon(1e-12));

    // Y = X through BSC(0.1)
    auto x = JointPmf::uniform({bin("X")});
    auto joint = compose(x, testutil::bsc(bin("X"), "Y", 0.1));
    CHECK(mutual_information(joint, {"X"}, {"Y"}) ==
          doctest::Approx(1.0 - h2(0.1)).epsilon(1e-12));
    CHECK(mutual_information(joint, {"X"}, {"Y"}) == doctest::Approx(0.531004).epsilon(1e-6));

    CHECK_THROWS_AS(mutual_information(joint, {"X"}, {"X"}), argument_error);
    CHECK_THROWS_AS(mutual_information(joint, {"X"}, {"Y"}, {"Y"}), argument_error);
}

TEST_CASE("marginalize examples") {
    auto px = JointPmf({bin("X")}, {0.3, 0.7});
    auto py = JointPmf({bin("Y")}, {0.6, 0.4});
    auto p = product(px, py);

    auto mx = marginalize(p, {"X"});
    REQUIRE(mx.cells() == 2);
    CHECK(mx.mass()[0] == doctest::Approx(0.3).epsilon(1e-14));

    // keep-all is the identity
    auto all = marginalize(p, {"X", "Y"});
    CHECK(all.mass() == p.mass());

    // XOR triple: X,Y iid uniform, Z = X^Y; (X,Z) marginal is uniform product
    std::vector<double> xor_mass(8, 0.0);
    for (std::size_t xi = 0; xi < 2; ++xi)
        for (std::size_t yi = 0; yi < 2; ++yi) {
            std::size_t zi = xi ^ yi;
            xor_mass[(xi * 2 + yi) * 2 + zi] = 0.25;
        }
    auto xyz = JointPmf({bin("X"), bin("Y"), bin("Z")}, xor_mass);
    auto xz = marginalize(xyz, {"X", "Z"});
    for (double m : xz.mass()) CHECK(m == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mutual_information(xz, {"X"}, {"Z"}) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(marginalize(p, {}), argument_error);
    CHECK_THROWS_AS(marginalize(p, {"W"}), name_error);
}

TEST_CASE("compose examples") {
    auto x = JointPmf::uniform({bin("X")});

    auto ident = compose(x, Kernel::identity(bin("X"), "Y"));
    CHECK(ident.at(std::vector<std::size_t>{0, 0}) == doctest::Approx(0.5));
    CHECK(ident.at(std::vector<std::size_t>{0, 1}) == 0.0);
    CHECK(ident.at(std::vector<std::size_t>{1, 1}) == doctest::Approx(0.5));

    auto cst = compose(x, Kernel::constant({bin("X")}, bin("Y"), {0.3, 0.7}));
    CHECK(mutual_information(cst, {"X"}, {"Y"}) == doctest::Approx(0.0).epsilon(1e-12));

    auto flipped = compose(x, testutil::bsc(bin("X"), "Y", 0.2));
    CHECK(mutual_information(flipped, {"X"}, {"Y"}) ==
          doctest::Approx(0.278072).epsilon(1e-6));
    CHECK(mutual_information(flipped, {"X"}, {"Y"}) ==
          doctest::Approx(1.0 - h2(0.2)).epsilon(1e-12));

    // name collision
    CHECK_THROWS_AS(compose(flipped, Kernel::identity(bin("X"), "Y")), argument_error);
    // missing source variable
    CHECK_THROWS_AS(compose(x, Kernel::identity(bin("W"), "V")), name_error);
}

TEST_CASE("kernel row validation") {
    CHECK_THROWS_AS(Kernel({bin("X")}, {bin("Y")}, {0.5, 0.4, 0.5, 0.5}), argument_error);
    CHECK_THROWS_AS(Kernel({bin("X")}, {bin("Y")}, {-0.1, 1.1, 0.5, 0.5}), argument_error);
}

TEST_CASE("chain rule property on random joints") {
    rng::Stream rs(101);
    for (int t = 0; t < 50; ++t) {
        auto p = testutil::random_joint(
            rs, {Var{"A", Alphabet::indexed("a", 3)}, Var{"B", Alphabet::indexed("b", 2)},
                 Var{"C", Alphabet::indexed("c", 2)}});
        double hab = entropy(p, {"A", "B"});
        double ha = entropy(p, {"A"});
        // H(B|A) = H(AB) - H(A)
        double hb_given_a = hab - ha;
        CHECK(std::abs(hab - (ha + hb_given_a)) <= 1e-10);
        // and against a separate route: H(ABC) = H(C) + H(AB|C)
        double habc = entropy(p, {"A", "B", "C"});
        double hc = entropy(p, {"C"});
        double hac = entropy(p, {"A", "C"});
        double hbc = entropy(p, {"B", "C"});
        double mi = mutual_information_raw(p, {"A"}, {"B"}, {"C"});
        CHECK(std::abs((hac - hc) + (hbc - hc) - (habc - hc) - mi) <= 1e-10);
    }
}

TEST_CASE("conditional MI nonnegative before clamp on random joints") {
    rng::Stream rs(202);
    for (int t = 0; t < 200; ++t) {
        auto p = testutil::random_joint(
            rs, {Var{"A", Alphabet::indexed("a", 2)}, Var{"B", Alphabet::indexed("b", 3)},
                 Var{"C", Alphabet::indexed("c", 2)}});
        CHECK(mutual_information_raw(p, {"A"}, {"B"}, {"C"}) >= -1e-10);
        CHECK(mutual_information(p, {"A"}, {"B"}, {"C"}) >= 0.0);
    }
}

TEST_CASE("data processing inequality on composed chains") {
    rng::Stream rs(303);
    for (int t = 0; t < 50; ++t) {
        auto a = testutil::random_joint(rs, {Var{"A", Alphabet::indexed("a", 3)}});
        auto kb = testutil::random_kernel(rs, {a.vars()[0]}, Var{"B", Alphabet::indexed("b", 3)});
        auto kc = testutil::random_kernel(rs, {Var{"B", Alphabet::indexed("b", 3)}},
                                          Var{"C", Alphabet::indexed("c", 3)});
        auto abc = compose(compose(a, kb), kc);
        double iab = mutual_information(abc, {"A"}, {"B"});
        double iac = mutual_information(abc, {"A"}, {"C"});
        CHECK(iac <= iab + 1e-10);
    }
}

TEST_CASE("marginalize then entropy matches grouped entropy exactly") {
    rng::Stream rs(404);
    for (int t = 0; t < 20; ++t) {
        auto p = testutil::random_joint(
            rs, {Var{"A", Alphabet::indexed("a", 2)}, Var{"B", Alphabet::indexed("b", 3)},
                 Var{"C", Alphabet::indexed("c", 2)}});
        double via_group = entropy(p, {"A", "C"});
        double via_marginal = entropy(marginalize(p, {"A", "C"}));
        CHECK(via_group == via_marginal); // bit-for-bit
    }
}

TEST_CASE("conditional extraction") {
    auto x = JointPmf({bin("X")}, {0.25, 0.75});
    auto joint = compose(x, testutil::bsc(bin("X"), "Y", 0.1));
    auto k = conditional(joint, {"X"}, {"Y"});
    CHECK(k.prob(0, 0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(k.prob(1, 0) == doctest::Approx(0.1).epsilon(1e-12));

    // recomposition reproduces the joint
    auto back = compose(marginalize(joint, {"X"}), k);
    for (std::size_t i = 0; i < joint.cells(); ++i)
        CHECK(back.mass()[i] == doctest::Approx(joint.mass()[i]).epsilon(1e-12));

    CHECK_THROWS_AS(conditional(joint, {}, {"Y"}), argument_error);
    CHECK_THROWS_AS(conditional(joint, {"X"}, {}), argument_error);
}

TEST_CASE("degenerate variables do not change information quantities") {
    auto x = JointPmf::uniform({bin("X")});
    auto joint = compose(x, testutil::bsc(bin("X"), "Y", 0.3));
    auto with_d = product(joint, JointPmf::uniform({Var{"D", Alphabet::degenerate()}}));
    CHECK(mutual_information(with_d, {"X"}, {"Y"}) ==
          mutual_information(joint, {"X"}, {"Y"}));
    CHECK(mutual_information(with_d, {"X"}, {"D"}) == 0.0);
    CHECK(mutual_information(with_d, {"X"}, {"Y"}, {"D"}) ==
          doctest::Approx(mutual_information(joint, {"X"}, {"Y"})).epsilon(1e-14));
}
