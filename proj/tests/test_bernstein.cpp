/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "support.hpp"

#include "efsmt/bernstein.hpp"

#include <gtest/gtest.h>

using namespace efsmt;
using namespace efsmt::test;

namespace {

/* Σ_I b_I Π C(D_i, I_i) t_i^I_i (1 − t_i)^(D_i − I_i), expanded symbolically. */
Polynomial reexpand(const BernsteinTensor &t)
{
	Polynomial sum;
	for (std::size_t flat = 0; flat < t.size(); ++flat) {
		auto idx = t.multi_index(flat);
		Polynomial term(t.coeffs[flat]);
		for (std::size_t i = 0; i < t.vars.size(); ++i) {
			Polynomial x = Polynomial::var(t.vars[i]);
			Integer c;
			mpz_bin_uiui(c.get_mpz_t(), t.degrees[i], idx[i]);
			term *= Rational(c);
			term *= x.pow(idx[i]) * (Polynomial(1) - x).pow(t.degrees[i] - idx[i]);
		}
		sum += term;
	}
	return sum;
}

Box unit_box(const std::vector<VarId> &vars)
{
	Box b;
	for (VarId v : vars)
		b[v] = {0, 1};
	return b;
}

Box random_box(Rng &rng, const std::vector<VarId> &vars)
{
	Box b;
	for (VarId v : vars) {
		Rational lo = rational(rng, -3, 3, 4);
		b[v] = {lo, lo + rational(rng, 1, 4, 4)};
	}
	return b;
}

Assignment sample(Rng &rng, const Box &box, long resolution = 1000)
{
	Assignment a;
	for (const auto &[v, iv] : box)
		a.set(v, in_interval(rng, iv, resolution));
	return a;
}

PolyCmp atom(const Polynomial &p, CmpOp op, const Rational &rhs) { return make_cmp(p, op, Polynomial(rhs)); }

} // namespace

TEST(Bernstein, NormalizeBoxPaperExample)
{
	Polynomial x = Polynomial::var(0);
	Polynomial q = normalize_box(x * x - 4 * x + 4, {{0, {1, 3}}});
	EXPECT_EQ(q, 4 * x * x - 4 * x + 1);
}

TEST(Bernstein, NormalizeUnitBoxIsIdentity)
{
	Rng rng(31);
	Polynomial p = random_poly(rng, {0, 1}, 3, 5);
	EXPECT_EQ(normalize_box(p, unit_box({0, 1})), p);
}

TEST(Bernstein, CoefficientsOfPaperExample)
{
	Polynomial y = Polynomial::var(0);
	Polynomial q = 4 * y * y - 4 * y + 1;
	BernsteinTensor t = to_bernstein(q, {0}, {2}, unit_box({0}));
	/* the re-expansion oracle fixes the middle coefficient at −1 */
	EXPECT_EQ(reexpand(t), q);
	EXPECT_EQ(t.coeffs, (std::vector<Rational>{1, -1, 1}));
}

TEST(Bernstein, ConstantAndIdentity)
{
	BernsteinTensor c = to_bernstein(Polynomial(Rational(7, 3)), {0}, {3}, unit_box({0}));
	for (const Rational &b : c.coeffs)
		EXPECT_EQ(b, Rational(7, 3));
	BernsteinTensor t = to_bernstein(Polynomial::var(0), {0}, {1}, unit_box({0}));
	EXPECT_EQ(t.coeffs, (std::vector<Rational>{0, 1}));
}

TEST(Bernstein, DegreeVectorTooSmall)
{
	Polynomial y = Polynomial::var(0);
	try {
		to_bernstein(y * y, {0}, {1}, unit_box({0}));
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind, ErrorKind::Degenerate);
	}
}

TEST(Bernstein, CheckAtomExamples)
{
	Polynomial x = Polynomial::var(0);
	AtomVerdict v = check_atom(atom(x * x - 4 * x + 4, CmpOp::Gt, -3), {{0, {1, 3}}});
	EXPECT_TRUE(v.proved());
	EXPECT_EQ(v.boxes, 1u);	/* depth 0 */

	v = check_atom(atom(x, CmpOp::Gt, 0), {{0, {-1, 1}}});
	ASSERT_TRUE(v.refuted());
	EXPECT_EQ(v.witness.number(0), -1);

	EXPECT_TRUE(check_atom(atom(x * x, CmpOp::Ge, 0), {{0, {-1, 1}}}).proved());
	EXPECT_THROW(check_atom(atom(x, CmpOp::Eq, 0), {{0, {-1, 1}}}), Error);
	EXPECT_THROW(check_atom(atom(x, CmpOp::Ne, 0), {{0, {-1, 1}}}), Error);
}

TEST(Bernstein, CheckAgExamples)
{
	Polynomial z = Polynomial::var(0);
	/* (−1 < z < 1) → 2·8·z²(z+2)(z+3) ≥ 0 over [−5, 5] */
	AGRule lyap{{atom(z, CmpOp::Gt, -1), atom(z, CmpOp::Lt, 1)},
	            atom(16 * z * z * (z + 2) * (z + 3), CmpOp::Ge, 0)};
	EXPECT_TRUE(check_ag({lyap}, {{0, {-5, 5}}}).proved());

	AGRule vacuous{{atom(z, CmpOp::Gt, 2)}, atom(z, CmpOp::Lt, -7)};
	EXPECT_TRUE(check_ag({vacuous}, {{0, {-1, 1}}}).proved());

	AGRule plain{{}, atom(z, CmpOp::Gt, 0)};
	Verdict3 r = check_ag({plain}, {{0, {-1, 1}}});
	ASSERT_TRUE(r.refuted());
	EXPECT_EQ(r.witness.number(0), -1);
}

TEST(Bernstein, SubdivideExamples)
{
	Polynomial x = Polynomial::var(0), y = Polynomial::var(1);
	Polynomial p = x * x * y - 3 * x + y * y + 1;
	Box box = {{0, {-1, 2}}, {1, {0, 1}}};
	BernsteinTensor t = bernstein_of(p, box);
	auto [l, r] = subdivide(t, 0);
	Assignment mid;
	mid.set(0, Rational(1, 2));
	for (Rational yv : {Rational(0), Rational(1)}) {
		mid.set(1, yv);
		std::vector<unsigned> li = {l.degrees[0], yv == 0 ? 0u : l.degrees[1]};
		std::vector<unsigned> ri = {0, yv == 0 ? 0u : r.degrees[1]};
		EXPECT_EQ(l.at(li), p.evaluate(mid));
		EXPECT_EQ(r.at(ri), p.evaluate(mid));
	}
	EXPECT_EQ(l.box.at(0), Interval(-1, Rational(1, 2)));
	EXPECT_EQ(r.box.at(0), Interval(Rational(1, 2), 2));

	BernsteinTensor c = bernstein_of(Polynomial(5), {{0, {0, 4}}});
	auto [cl, cr] = subdivide(c, 0);
	EXPECT_EQ(cl.coeffs, c.coeffs);
	EXPECT_EQ(cr.coeffs, c.coeffs);
}

/* ---- properties --------------------------------------------------------- */

TEST(BernsteinProperty, EnclosureOverRandomPolynomials)
{
	Rng rng(32);
	unsigned violations = 0, samples = 0;
	for (int i = 0; i < 1000; ++i) {
		std::vector<VarId> vars;
		for (long n = uniform(rng, 1, 3), k = 0; k < n; ++k)
			vars.push_back(static_cast<VarId>(k));
		Polynomial p = random_poly(rng, vars, 4, static_cast<unsigned>(uniform(rng, 1, 6)));
		Box box = random_box(rng, vars);
		BernsteinTensor t = bernstein_of(p, box);
		Rational lo = t.min(), hi = t.max();
		for (int s = 0; s < 100; ++s, ++samples) {
			Rational v = p.evaluate(sample(rng, box));
			violations += v < lo || v > hi;
		}
	}
	EXPECT_EQ(samples, 100000u);
	EXPECT_EQ(violations, 0u);
}

TEST(BernsteinProperty, ReexpansionIsExact)
{
	Rng rng(33);
	for (int i = 0; i < 200; ++i) {
		Polynomial p = random_poly(rng, {0, 1, 2}, 3, 4);
		std::vector<unsigned> deg;
		for (VarId v : {0u, 1u, 2u})
			deg.push_back(p.degree_in(v) + static_cast<unsigned>(uniform(rng, 0, 1)));
		BernsteinTensor t = to_bernstein(p, {0, 1, 2}, deg, unit_box({0, 1, 2}));
		ASSERT_EQ(reexpand(t), p);
	}
}

TEST(BernsteinProperty, CornersAreSharp)
{
	Rng rng(34);
	for (int i = 0; i < 200; ++i) {
		Polynomial p = random_poly(rng, {0, 1}, 4, 5);
		Box box = random_box(rng, {0, 1});
		BernsteinTensor t = bernstein_of(p, box);
		for (std::size_t f = 0; f < t.size(); ++f) {
			if (!t.is_corner(f))
				continue;
			ASSERT_EQ(t.coeffs[f], p.evaluate(t.corner_point(f)));
		}
	}
}

TEST(BernsteinProperty, CheckAtomAgreesWithGridSampling)
{
	Rng rng(35);
	unsigned proved = 0, refuted = 0;
	for (int i = 0; i < 150; ++i) {
		Polynomial p = random_poly(rng, {0}, 4, 4);
		Box box = random_box(rng, {0});
		PolyCmp a = atom(p, random_op(rng, false), rational(rng, -4, 4, 2));
		AtomVerdict v = check_atom(a, box, 8);
		const Interval &iv = box.at(0);
		if (v.proved()) {
			++proved;
			for (int k = 0; k <= 10000; ++k) {
				Assignment pt;
				pt.set(0, Rational(iv.lo + iv.width() * ratio(k, 10000)));
				ASSERT_TRUE(a.holds(pt)) << "proved but violated at " << to_string(pt.number(0));
			}
		} else if (v.refuted()) {
			++refuted;
			ASSERT_FALSE(a.holds(v.witness));
			ASSERT_TRUE(iv.contains(v.witness.number(0)));
		}
	}
	EXPECT_GT(proved, 10u);
	EXPECT_GT(refuted, 10u);
}

TEST(BernsteinProperty, SubdivisionGapIsNonIncreasing)
{
	Rng rng(36);
	for (int i = 0; i < 200; ++i) {
		Polynomial p = random_poly(rng, {0, 1}, 4, 5);
		BernsteinTensor t = bernstein_of(p, random_box(rng, {0, 1}));
		for (int depth = 0; depth < 6; ++depth) {
			auto halves = subdivide(t, static_cast<std::size_t>(uniform(rng, 0, long(t.vars.size()))));
			BernsteinTensor next = uniform(rng, 0, 1) ? halves.first : halves.second;
			ASSERT_LE(next.max() - next.min(), t.max() - t.min());
			ASSERT_GE(next.min(), t.min());
			ASSERT_LE(next.max(), t.max());
			t = next;
		}
	}
}
