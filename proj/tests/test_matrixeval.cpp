#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freejac/digest.hpp"
#include "freejac/error.hpp"
#include "freejac/eval.hpp"
#include "freejac/parse.hpp"
#include "freejac/sample.hpp"
#include "test_util.hpp"

using namespace freejac;
using testutil::random_map;
using testutil::random_similarity;
using testutil::random_tuple;
using testutil::rel_err;

namespace {

MatrixTuple single(const Eigen::MatrixXcd& m) { return MatrixTuple({m}); }

Eigen::MatrixXcd mat2(cplx a, cplx b, cplx c, cplx d) {
    Eigen::MatrixXcd m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("squaring a nilpotent gives zero") {
    FreePolyMap p = parse_map("vars X; (X^2)");
    MatrixTuple out = eval_map(p, single(mat2(0, 1, 0, 0)));
    CHECK(out.mats[0].norm() == 0.0);
}

TEST_CASE("commutator vanishes on a commuting pair") {
    FreePolyMap p = parse_map("vars X,Y; ([X,Y])");
    std::mt19937_64 rng(11);
    Eigen::MatrixXcd x = ginibre(rng, 3);
    MatrixTuple pair({x, x * x});
    CHECK(eval_map(p, pair).norm() <= 1e-12 * std::max(1.0, pair.norm()));
}

TEST_CASE("the standard polynomial S4 vanishes on 2x2 but not 3x3") {
    FreePoly s4 = testutil::standard_poly_s4();
    FreePolyMap map(4, {s4});
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 25; ++rep) {
        MatrixTuple quad = random_tuple(rng, 4, 2);
        Eigen::MatrixXcd via_poly = eval_map(map, quad).mats[0];
        Eigen::MatrixXcd direct = testutil::s4_direct(quad.mats);
        CHECK((via_poly - direct).norm() <= 1e-12);
        CHECK(via_poly.norm() <= 1e-12);
    }
    MatrixTuple triple = random_tuple(rng, 4, 3);
    CHECK(eval_map(map, triple).mats[0].norm() > 1e-3);
}

TEST_CASE("direct sum basics") {
    MatrixTuple a = single(Eigen::MatrixXcd::Constant(1, 1, 1.0));
    MatrixTuple b = single(Eigen::MatrixXcd::Constant(1, 1, 2.0));
    MatrixTuple sum = direct_sum(a, b);
    CHECK(sum.size() == 2);
    CHECK(sum.mats[0](0, 0) == cplx(1.0));
    CHECK(sum.mats[0](1, 1) == cplx(2.0));
    CHECK(sum.mats[0](0, 1) == cplx(0.0));

    std::mt19937_64 rng(13);
    MatrixTuple big_a = random_tuple(rng, 2, 3);
    MatrixTuple big_b = random_tuple(rng, 2, 2);
    MatrixTuple stacked = direct_sum(big_a, big_b);
    for (int i = 0; i < 2; ++i) {
        CHECK((stacked.mats[i].topLeftCorner(3, 3) - big_a.mats[i]).norm() == 0.0);
    }
}

TEST_CASE("free-map axioms: direct sums and similarity, 200 random instances") {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 200; ++rep) {
        const int nvars = 1 + static_cast<int>(rng() % 3);
        const int nouts = 1 + static_cast<int>(rng() % 2);
        FreePolyMap p = random_map(rng, nvars, nouts, 5, 5);
        const int na = 1 + static_cast<int>(rng() % 3);
        const int nb = 1 + static_cast<int>(rng() % 3);
        MatrixTuple a = random_tuple(rng, nvars, na);
        MatrixTuple b = random_tuple(rng, nvars, nb);

        MatrixTuple lhs = eval_map(p, direct_sum(a, b));
        MatrixTuple rhs = direct_sum(eval_map(p, a), eval_map(p, b));
        CHECK(rel_err(lhs, rhs) <= 1e-9);

        Eigen::MatrixXcd s = random_similarity(rng, na);
        MatrixTuple lhs2 = eval_map(p, similarity(a, s));
        MatrixTuple rhs2 = similarity(eval_map(p, a), s);
        CHECK(rel_err(lhs2, rhs2) <= 1e-9);
    }
}

TEST_CASE("similarity with the identity is a no-op") {
    std::mt19937_64 rng(15);
    MatrixTuple a = random_tuple(rng, 2, 3);
    MatrixTuple out = similarity(a, Eigen::MatrixXcd::Identity(3, 3));
    CHECK((out - a).norm() <= 1e-14);
}

TEST_CASE("similarity rejects an ill-conditioned matrix") {
    std::mt19937_64 rng(16);
    MatrixTuple a = random_tuple(rng, 1, 2);
    Eigen::MatrixXcd s = mat2(1.0, 0.0, 0.0, 1e-15);
    CHECK_THROWS_AS(similarity(a, s), Error);
}

TEST_CASE("the four-block shear similarity exposes X1 - X2") {
    // S = identity with one extra identity block in the upper-right corner,
    // applied to X1 (+) X2 (+) X1 (+) X2.
    std::mt19937_64 rng(17);
    const int n = 2;
    MatrixTuple x1 = random_tuple(rng, 1, n);
    MatrixTuple x2 = random_tuple(rng, 1, n);
    MatrixTuple stacked = direct_sum(direct_sum(x1, x2), direct_sum(x1, x2));

    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(4 * n, 4 * n);
    s.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);

    MatrixTuple out = similarity(stacked, s);
    Eigen::MatrixXcd want = x1.mats[0] - x2.mats[0];
    CHECK((out.mats[0].topRightCorner(n, n) - want).norm() <= 1e-12 * std::max(1.0, want.norm()));
    CHECK((out.mats[0].topLeftCorner(n, n) - x1.mats[0]).norm() <= 1e-12);
    CHECK((out.mats[0].block(n, n, n, n) - x2.mats[0]).norm() <= 1e-12);
}

TEST_CASE("jet of the squaring map at diag(1,2)") {
    FreePolyMap p = parse_map("vars X; (X^2)");
    MatrixTuple x = single(mat2(1, 0, 0, 2));
    MatrixTuple h = single(mat2(0, 1, 0, 0));
    JetResult jet = jet_eval(p, x, h);
    // oracle: XH + HX by hand = [[0,1],[0,0]] + [[0,2],[0,0]]
    CHECK((jet.derivative.mats[0] - mat2(0, 3, 0, 0)).norm() <= 1e-14);
    CHECK((jet.value.mats[0] - mat2(1, 0, 0, 4)).norm() <= 1e-14);
}

TEST_CASE("jet is zero in the zero direction and linear maps forget the point") {
    std::mt19937_64 rng(18);
    FreePolyMap p = random_map(rng, 2, 2, 4, 5);
    MatrixTuple x = random_tuple(rng, 2, 3);
    CHECK(jet_eval(p, x, MatrixTuple::zero(2, 3)).derivative.norm() == 0.0);

    FreePolyMap linear = parse_map("vars X,Y; (2*X + (0+3i)*Y)");
    MatrixTuple h = random_tuple(rng, 2, 3);
    MatrixTuple d1 = jet_eval(linear, x, h).derivative;
    MatrixTuple d2 = jet_eval(linear, random_tuple(rng, 2, 3), h).derivative;
    CHECK((d1 - d2).norm() <= 1e-12 * std::max(1.0, d1.norm()));
    Eigen::MatrixXcd want = 2.0 * h.mats[0] + cplx(0, 3) * h.mats[1];
    CHECK((d1.mats[0] - want).norm() <= 1e-12 * std::max(1.0, want.norm()));
}

TEST_CASE("jet identity: block derivative equals the formal derivative, 200 instances") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 200; ++rep) {
        const int nvars = 1 + static_cast<int>(rng() % 3);
        const int nouts = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 4);
        FreePolyMap p = random_map(rng, nvars, nouts, 5, 6);
        MatrixTuple x = random_tuple(rng, nvars, n);
        MatrixTuple h = random_tuple(rng, nvars, n);
        MatrixTuple via_jet = jet_eval(p, x, h).derivative;
        MatrixTuple via_formal = eval_formal_derivative(p, x, h);
        CHECK(rel_err(via_jet, via_formal) <= 1e-9);
    }
}

TEST_CASE("jet structure: diagonal blocks equal the plain evaluation") {
    std::mt19937_64 rng(20);
    for (int rep = 0; rep < 50; ++rep) {
        const int nvars = 1 + static_cast<int>(rng() % 2);
        FreePolyMap p = random_map(rng, nvars, 2, 4, 5);
        MatrixTuple x = random_tuple(rng, nvars, 3);
        MatrixTuple h = random_tuple(rng, nvars, 3);
        JetResult jet = jet_eval(p, x, h);
        MatrixTuple plain = eval_map(p, x);
        CHECK((jet.value - plain).norm() <= 1e-12 * std::max(1.0, plain.norm()));
    }
}

TEST_CASE("jet derivative is additive and homogeneous in the direction") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        FreePolyMap p = random_map(rng, 2, 2, 4, 5);
        MatrixTuple x = random_tuple(rng, 2, 3);
        MatrixTuple h1 = random_tuple(rng, 2, 3);
        MatrixTuple h2 = random_tuple(rng, 2, 3);
        const cplx lam = testutil::random_coeff(rng);

        MatrixTuple sum_dir = h1;
        for (int i = 0; i < 2; ++i) sum_dir.mats[i] = h1.mats[i] + lam * h2.mats[i];
        MatrixTuple lhs = jet_eval(p, x, sum_dir).derivative;
        MatrixTuple d1 = jet_eval(p, x, h1).derivative;
        MatrixTuple d2 = jet_eval(p, x, h2).derivative;
        MatrixTuple rhs = d1;
        for (int i = 0; i < 2; ++i) rhs.mats[i] = d1.mats[i] + lam * d2.mats[i];
        CHECK(rel_err(lhs, rhs) <= 1e-9);
    }
}

TEST_CASE("sampling is deterministic per seed") {
    SampleConfig cfg;
    cfg.size = 3;
    cfg.count = 5;
    cfg.seed = 42;
    auto batch1 = sample_tuples(cfg, 2);
    auto batch2 = sample_tuples(cfg, 2);
    REQUIRE(batch1.size() == batch2.size());
    for (std::size_t i = 0; i < batch1.size(); ++i) {
        CHECK(digest(batch1[i]) == digest(batch2[i]));
    }
    cfg.seed = 43;
    CHECK(digest(sample_tuples(cfg, 2).front()) != digest(batch1.front()));
}

TEST_CASE("hermitian-ginibre samples are hermitian") {
    SampleConfig cfg;
    cfg.size = 4;
    cfg.count = 5;
    cfg.seed = 99;
    cfg.distribution = Distribution::hermitian_ginibre;
    for (const auto& x : sample_tuples(cfg, 2)) {
        for (const auto& m : x.mats) {
            CHECK((m - m.adjoint()).norm() <= 1e-15);
        }
    }
}

TEST_CASE("weighted norm-sum domain is enforced") {
    DomainSpec domain;
    DomainConstraint c;
    c.kind = DomainConstraint::Kind::weighted_norm_sum;
    c.weights = {4.0, 2.0};
    c.bound = 1.0;
    domain.constraints.push_back(c);

    SampleConfig cfg;
    cfg.size = 3;
    cfg.count = 50;
    cfg.seed = 7;
    cfg.domain = domain;
    for (const auto& x : sample_tuples(cfg, 2)) {
        CHECK(4.0 * op_norm(x.mats[0]) + 2.0 * op_norm(x.mats[1]) < 1.0);
    }
    CHECK_FALSE(domain.is_free_set());
}

TEST_CASE("spectral half-plane domain puts every eigenvalue right of zero") {
    DomainSpec domain;
    DomainConstraint c;
    c.kind = DomainConstraint::Kind::spectral_halfplane;
    c.var = 0;
    domain.constraints.push_back(c);

    SampleConfig cfg;
    cfg.size = 4;
    cfg.count = 50;
    cfg.seed = 8;
    cfg.domain = domain;
    for (const auto& x : sample_tuples(cfg, 1)) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(x.mats[0], false);
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            CHECK(es.eigenvalues()(i).real() > 0.0);
        }
    }
    CHECK(domain.is_free_set());
}

TEST_CASE("an empty domain exhausts the sampler") {
    // opposite half-planes on the same variable cannot both hold
    DomainSpec domain;
    DomainConstraint right;
    right.kind = DomainConstraint::Kind::spectral_halfplane;
    right.var = 0;
    DomainConstraint left = right;
    left.rotation = 3.14159265358979323846;
    domain.constraints = {right, left};

    SampleConfig cfg;
    cfg.size = 2;
    cfg.count = 1;
    cfg.seed = 3;
    cfg.domain = domain;
    try {
        sample_tuples(cfg, 1);
        FAIL("expected domain_unsatisfiable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::domain_unsatisfiable);
    }
}

TEST_CASE("a tight ball with a half-plane is satisfiable when the draw starts inside") {
    DomainSpec domain;
    DomainConstraint ball;
    ball.kind = DomainConstraint::Kind::norm_bound;
    ball.var = 0;
    ball.bound = 0.05;
    DomainConstraint half;
    half.kind = DomainConstraint::Kind::spectral_halfplane;
    half.var = 0;
    domain.constraints = {ball, half};

    SampleConfig cfg;
    cfg.size = 2;
    cfg.count = 3;
    cfg.seed = 3;
    cfg.domain = domain;
    for (const auto& x : sample_tuples(cfg, 1)) {
        CHECK(op_norm(x.mats[0]) < 0.05);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(x.mats[0], false);
        for (int i = 0; i < 2; ++i) CHECK(es.eigenvalues()(i).real() > 0.0);
    }
}

TEST_CASE("invalid domain specs are rejected") {
    DomainSpec bad;
    DomainConstraint c;
    c.kind = DomainConstraint::Kind::norm_bound;
    c.var = 0;
    c.bound = -1.0;
    bad.constraints = {c};
    CHECK_THROWS_AS(bad.validate(1), Error);

    DomainSpec zero_weights;
    DomainConstraint w;
    w.kind = DomainConstraint::Kind::weighted_norm_sum;
    w.weights = {0.0, 0.0};
    w.bound = 1.0;
    zero_weights.constraints = {w};
    CHECK_THROWS_AS(zero_weights.validate(2), Error);
}

TEST_CASE("commuting tuples commute and kill the commutator map") {
    MatrixTuple lone = sample_commuting_tuple(3, 1, 1);
    CHECK(lone.count() == 1);

    MatrixTuple pair = sample_commuting_tuple(3, 2, 2);
    const auto& a = pair.mats[0];
    const auto& b = pair.mats[1];
    CHECK((a * b - b * a).norm() <= 1e-10 * a.norm() * b.norm());

    FreePolyMap comm = parse_map("vars X,Y; ([X,Y])");
    CHECK(eval_map(comm, pair).norm() <= 1e-10 * std::max(1.0, pair.norm() * pair.norm()));

    MatrixTuple many = sample_commuting_tuple(4, 3, 3);
    for (int i = 0; i < many.count(); ++i) {
        for (int j = i + 1; j < many.count(); ++j) {
            const auto& u = many.mats[i];
            const auto& v = many.mats[j];
            CHECK((u * v - v * u).norm() <= 1e-10 * std::max(1.0, u.norm() * v.norm()));
        }
    }
}

TEST_CASE("tuple JSON round-trips exactly") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        MatrixTuple x = random_tuple(rng, 1 + static_cast<int>(rng() % 3),
                                     1 + static_cast<int>(rng() % 4));
        MatrixTuple back = MatrixTuple::from_json(
            nlohmann::json::parse(x.to_json().dump()));
        REQUIRE(back.count() == x.count());
        for (int i = 0; i < x.count(); ++i) {
            CHECK(back.mats[i] == x.mats[i]);
        }
    }
}

TEST_CASE("shape errors") {
    FreePolyMap p = parse_map("vars X,Y; (X+Y)");
    std::mt19937_64 rng(24);
    CHECK_THROWS_AS(eval_map(p, random_tuple(rng, 1, 2)), Error);
    CHECK_THROWS_AS(direct_sum(random_tuple(rng, 1, 2), random_tuple(rng, 2, 2)), Error);
    CHECK_THROWS_AS(jet_eval(p, random_tuple(rng, 2, 2), random_tuple(rng, 2, 3)), Error);
}
