#include "doctest.h"

#include <algorithm>

#include <holkit/charclasses.hpp>
#include <holkit/error.hpp>

#include "corpus.hpp"

using namespace holkit;

namespace
{

coh_class cls(const space &x, std::map<exponent, rational> poly)
{
    return coh_class(x.ring, poly);
}

rational r(long p, long q = 1)
{
    return make_rational(p, q);
}

} // namespace

TEST_CASE("rings of catalog spaces")
{
    const auto p2 = proj_space(2);
    CHECK(p2->ring->basis() == std::vector<exponent>{{0}, {1}, {2}});
    CHECK(p2->dim == 2);
    CHECK(p2->tangent.rank() == 2);

    const auto p1 = proj_space(1);
    const auto q = product(p1, p1);
    CHECK(q->ring->basis().size() == 4);
    CHECK(q->ring->generators()[1].name == "h'");
    CHECK(q->tangent.rank() == 2);

    const auto pb = proj_bundle(p1, parse_bundle(*p1, "O+O"));
    CHECK(pb->ring->basis().size() == 4);
    CHECK(pb->dim == 2);
    // O+O has trivial Chern classes, so xi^2 = 0 just like h'^2 = 0
    CHECK(pb->ring->generators()[1].relation_rhs.empty());
    CHECK(pb->ring->generators()[1].relation_power == q->ring->generators()[1].relation_power);

    CHECK(point()->ring->basis().size() == 1);
    CHECK_THROWS_AS(proj_bundle(p1, trivial_bundle(p1->ring, 0)), parameter_error);
    CHECK_THROWS_AS(proj_bundle(p1, difference(trivial_bundle(p1->ring, 2), parse_bundle(*p1, "O(1)"))),
                    parameter_error);
}

TEST_CASE("Chern classes")
{
    const auto p2 = proj_space(2);
    const auto c = total_chern(parse_bundle(*p2, "O(2)+O(3)"));
    CHECK(c[1] == cls(*p2, {{{1}, r(5)}}));
    CHECK(c[2] == cls(*p2, {{{2}, r(6)}}));

    const auto ct = total_chern(p2->tangent);
    CHECK(ct[1] == cls(*p2, {{{1}, r(3)}}));
    CHECK(ct[2] == cls(*p2, {{{2}, r(3)}}));

    const auto v = parse_bundle(*p2, "O(1)+O(-2)");
    const auto cv = total_chern(difference(v, v));
    CHECK(cv[0] == coh_class::constant(p2->ring, 1));
    CHECK(cv[1].is_zero());
    CHECK(cv[2].is_zero());
}

TEST_CASE("Chern character and Todd class")
{
    const auto p2 = proj_space(2);
    CHECK(chern_character(parse_bundle(*p2, "O(3)")) == cls(*p2, {{{0}, r(1)}, {{1}, r(3)}, {{2}, r(9, 2)}}));

    const auto q = todd_series(4);
    CHECK(q == std::vector<rational>{r(1), r(1, 2), r(1, 12), r(0), r(-1, 720)});
    CHECK(todd_series(6) == testing::todd_series_oracle(6));

    const auto p1 = proj_space(1);
    CHECK(todd(p1->tangent) == cls(*p1, {{{0}, r(1)}, {{1}, r(1)}}));
    CHECK(todd(trivial_bundle(p2->ring, 3)) == coh_class::constant(p2->ring, 1));

    const auto l = parse_bundle(*p2, "O(2)");
    const auto m = parse_bundle(*p2, "O(-1)");
    CHECK(chern_character(tensor(l, m)) == chern_character(l) * chern_character(m));
    CHECK(chern_character(difference(l, m)) == chern_character(l) - chern_character(m));
}

TEST_CASE("integration")
{
    const auto p2 = proj_space(2);
    CHECK(integrate(*p2, cls(*p2, {{{2}, r(1)}})) == 1);
    CHECK(integrate(*p2, cls(*p2, {{{1}, r(1)}})) == 0);
    const auto q = product(proj_space(1), proj_space(1));
    CHECK(integrate(*q, cls(*q, {{{1, 1}, r(1)}})) == 1);
    CHECK_THROWS_AS(integrate(*q, cls(*p2, {{{2}, r(1)}})), ring_mismatch_error);
}

TEST_CASE("pushforward")
{
    const auto p1 = proj_space(1);
    const auto q = product(p1, p1);
    const auto pr = first_projection(q);
    CHECK(pushforward(pr, cls(*q, {{{1, 1}, r(1)}})) == cls(*p1, {{{1}, r(1)}}));
    CHECK(pushforward(pr, cls(*q, {{{1, 0}, r(1)}})).is_zero());

    const auto pb = proj_bundle(p1, parse_bundle(*p1, "O+O"));
    const auto pi = bundle_projection(pb);
    CHECK(pushforward(pi, cls(*pb, {{{0, 1}, r(1)}})) == coh_class::constant(p1->ring, 1));

    // projection formula on random classes
    testing::rng_t rng(41);
    const auto base = proj_space(2);
    const auto total = proj_bundle(base, parse_bundle(*base, "O+O(1)+O(2)"));
    const auto f = bundle_projection(total);
    for (int t = 0; t < 100; ++t) {
        std::map<exponent, rational> xs, ys;
        for (const auto &e : total->ring->basis()) {
            xs[e] = testing::small_rational(rng);
        }
        for (const auto &e : base->ring->basis()) {
            ys[e] = testing::small_rational(rng);
        }
        const coh_class x(total->ring, xs);
        const coh_class y(base->ring, ys);
        CHECK(pushforward(f, x * pullback(f, y)) == pushforward(f, x) * y);
    }
}

TEST_CASE("projective bundle of a trivial bundle pushes forward like a product")
{
    const auto p2 = proj_space(2);
    const auto pb = proj_bundle(p2, trivial_bundle(p2->ring, 2));
    const auto prod = product(p2, proj_space(1));
    for (const auto &e : pb->ring->basis()) {
        CHECK(pushforward(bundle_projection(pb), coh_class(pb->ring, {{e, 1}})) ==
              pushforward(first_projection(prod), coh_class(prod->ring, {{e, 1}})));
    }
}

TEST_CASE("Euler classes")
{
    const auto p2 = proj_space(2);
    const auto l = parse_bundle(*p2, "O(1)");
    CHECK(euler_class(l, euler_normalization::hodge) == cls(*p2, {{{1}, r(1)}}));
    CHECK(euler_class(l, euler_normalization::hochschild) == cls(*p2, {{{1}, r(1)}, {{2}, r(-1, 2)}}));
    CHECK_THROWS_AS(euler_class(parse_bundle(*p2, "O+O"), euler_normalization::hodge), parameter_error);

    const auto p3 = proj_space(3);
    const auto q = todd_series(3);
    for (long d = -3; d <= 3; ++d) {
        const auto lb = parse_bundle(*p3, "O(" + std::to_string(d) + ")");
        const auto c1 = euler_class(lb, euler_normalization::hodge);
        coh_class qc(p3->ring);
        for (std::size_t k = q.size(); k-- > 0;) {
            qc = qc * c1 + coh_class::constant(p3->ring, q[k]);
        }
        CHECK(euler_class(lb, euler_normalization::hochschild) * qc == c1);
    }
}

TEST_CASE("HRR against the monomial-count oracle")
{
    CHECK(oracle_chi_proj(1, 3) == 4);
    CHECK(oracle_chi_proj(2, 0) == 1);
    CHECK(oracle_chi_proj(3, -4) == -1);
    const auto p2 = proj_space(2);
    CHECK(hrr(*p2, parse_bundle(*p2, "O(-1)")) == 0);
    for (unsigned n = 1; n <= 3; ++n) {
        const auto pn = proj_space(n);
        for (long k = -6; k <= 6; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            const auto expected = rational(static_cast<long>(oracle_chi_proj(n, k)));
            CHECK(hrr(*pn, parse_bundle(*pn, "O(" + std::to_string(k) + ")")) == expected);
        }
    }
}

TEST_CASE("Whitney formula and root-order independence")
{
    testing::rng_t rng(13);
    const auto x = product(proj_space(2), proj_space(1));
    auto random_line = [&] {
        return line_bundle(coh_class::generator(x->ring, 0, testing::uniform_int(rng, -3, 3)) +
                           coh_class::generator(x->ring, 1, testing::uniform_int(rng, -3, 3)));
    };
    for (int t = 0; t < 20; ++t) {
        const auto v = direct_sum(random_line(), random_line());
        const auto w = direct_sum(random_line(), direct_sum(random_line(), random_line()));
        const auto cv = total_chern(v);
        const auto cw = total_chern(w);
        const auto cvw = total_chern(direct_sum(v, w));
        for (unsigned d = 0; d < cvw.size(); ++d) {
            coh_class acc(x->ring);
            for (unsigned a = 0; a <= d; ++a) {
                acc = acc + cv[a] * cw[d - a];
            }
            CHECK(cvw[d] == acc);
        }
        CHECK(chern_character(tensor(v, w)) == chern_character(v) * chern_character(w));
        auto shuffled = direct_sum(w, v);
        std::reverse(shuffled.plus_roots.begin(), shuffled.plus_roots.end());
        CHECK(todd(shuffled) == todd(direct_sum(v, w)));
        CHECK(chern_character(shuffled) == chern_character(direct_sum(v, w)));
        const rational chi = hrr(*x, direct_sum(v, w));
        CHECK(chi.get_den() == 1);
    }
}

TEST_CASE("GRR for the catalog maps")
{
    const auto p1 = proj_space(1);
    const auto q = product(p1, p1);
    const auto pr = first_projection(q);
    for (long a = 0; a <= 2; ++a) {
        for (long b = 0; b <= 2; ++b) {
            const auto v = parse_bundle(*q, "O(" + std::to_string(a) + "," + std::to_string(b) + ")");
            const auto pushed = parse_bundle(*p1, std::to_string(b + 1) + "*O(" + std::to_string(a) + ")");
            const auto res = grr_check(pr, v, pushed);
            CHECK(res.equal);
            // both sides are (b+1) e^(a h) (1+h)
            CHECK(res.lhs == cls(*p1, {{{0}, r(b + 1)}, {{1}, r((b + 1) * (a + 1))}}));
        }
    }
    const auto pb = proj_bundle(p1, parse_bundle(*p1, "O+O(1)"));
    const auto pi = bundle_projection(pb);
    for (unsigned m = 0; m <= 2; ++m) {
        const auto v = parse_bundle(*pb, "O(" + std::to_string(m) + ")");
        const auto pushed = sym_power(dual(parse_bundle(*p1, "O+O(1)")), m);
        CHECK(grr_check(pi, v, pushed).equal);
    }
    CHECK(grr_check(identity_map(p1), parse_bundle(*p1, "O(2)"), parse_bundle(*p1, "O(2)")).equal);
    // a wrong pushforward is detected
    CHECK_FALSE(grr_check(pr, parse_bundle(*q, "O(1,1)"), parse_bundle(*p1, "O(1)")).equal);
    CHECK_THROWS_AS(grr_check(pr, parse_bundle(*q, "O(1,1)"), parse_bundle(*q, "O(1,1)")), input_error);
}

TEST_CASE("catalog parsing")
{
    CHECK(parse_space("P3")->dim == 3);
    CHECK(parse_space("pt")->dim == 0);
    CHECK(parse_space("P1xP2")->dim == 3);
    CHECK(parse_space("P(O+O(1))/P1")->dim == 2);
    const auto p2 = parse_space("P2");
    CHECK(parse_bundle(*p2, "2*O(1) - O").rank() == 1);
    CHECK(parse_bundle(*p2, "T").rank() == 2);
    CHECK(hrr(*p2, parse_bundle(*p2, "T")) == 8);
    CHECK(parse_map("P1xP1->P1").shape == supported_map::kind::first_projection);
    CHECK(parse_map("P2xP1->P1").shape == supported_map::kind::second_projection);
    CHECK(parse_map("P(O+O(1))->P1").shape == supported_map::kind::bundle_projection);
    CHECK(parse_map("P2->P2").shape == supported_map::kind::identity);
    CHECK_THROWS_AS(parse_map("P2->P1"), catalog_error);
    CHECK_THROWS_AS(parse_space("Q2"), input_error);
    CHECK_THROWS_AS(parse_bundle(*p2, "O(1,2)"), input_error);
    CHECK_THROWS_AS(parse_bundle(*p2, "L"), input_error);
}
