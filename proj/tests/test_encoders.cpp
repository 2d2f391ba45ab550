/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "support.hpp"

#include "efsmt/encoders.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace efsmt;
using namespace efsmt::test;

namespace {

const Priority a_d{"a", "d"}, c_b{"c", "b"}, a_e{"a", "e"}, a_c{"a", "c"}, c_a{"c", "a"};

std::vector<GlobalState> sorted(std::vector<GlobalState> v)
{
	std::sort(v.begin(), v.end());
	return v;
}

/* The paper's printed template values: m covers x1 = 0, n covers (1, 0). */
std::map<std::string, bool> paper_templates()
{
	return {{"m_val", true}, {"m1", false}, {"n_val", true}, {"n1", true}, {"n2", false}};
}

Polynomial V(VarId v) { return Polynomial::var(v); }

} // namespace

/* ---- priority ----------------------------------------------------------- */

TEST(Priority, VariableCounts)
{
	ComponentSystem sys = paper_priority_system();
	PriorityEncoding enc = encode_priority(sys, paper_priority_templates());
	EXPECT_EQ(enc.priority_vars.size(), 25u);
	EXPECT_EQ(enc.template_vars.size(), 8u);
	EXPECT_EQ(enc.problem.forall_vars.size(), 4u);
	EXPECT_EQ(enc.problem.exists_vars.size(), 33u);
	enc.problem.validate();
}

TEST(Priority, PaperWitnessVerifies)
{
	ComponentSystem sys = paper_priority_system();
	PriorityEncoding enc = encode_priority(sys, paper_priority_templates());
	Assignment w = priority_witness(enc, {a_d, c_b}, paper_templates());
	EXPECT_EQ(verify_witness(enc.problem, w), WitnessCheck::Holds);
	PrioritySolution s = decode_priority(sys, enc, w);
	EXPECT_EQ(s.priorities, (std::set<Priority>{a_d, c_b}));
	EXPECT_EQ(sorted(s.invariant), (std::vector<GlobalState>{{0, 0}, {0, 1}, {1, 0}}));
	EXPECT_TRUE(oracle_priority(sys, s.priorities).safe());
}

TEST(Priority, SolvedPrioritiesPassTheOracle)
{
	ComponentSystem sys = paper_priority_system();
	PriorityEncoding enc = encode_priority(sys, paper_priority_templates());
	Verdict v = solve(enc.problem);
	ASSERT_TRUE(v.valid()) << v.reason;
	PrioritySolution s = decode_priority(sys, enc, v.witness);
	EXPECT_EQ(s.priorities, transitive_closure(s.priorities));
	for (const Priority &p : s.priorities)
		EXPECT_NE(p.first, p.second);
	EXPECT_TRUE(oracle_priority(sys, s.priorities).safe());
	for (const GlobalState &r : sys.risk)
		EXPECT_EQ(std::count(s.invariant.begin(), s.invariant.end(), r), 0);
}

TEST(Priority, ChannelRestrictedUsesAE)
{
	ComponentSystem sys = paper_priority_system(true);
	PriorityEncoding enc = encode_priority(sys, paper_priority_templates());
	Verdict v = solve(enc.problem);
	ASSERT_TRUE(v.valid()) << v.reason;
	PrioritySolution s = decode_priority(sys, enc, v.witness);
	for (const Priority &f : sys.forbidden)
		EXPECT_EQ(s.priorities.count(f), 0u) << f.first << "<" << f.second;
	EXPECT_EQ(s.priorities.count(a_e), 1u);
	EXPECT_TRUE(oracle_priority(sys, s.priorities).safe());

	/* the paper's description: only template m, safe states (0,0) and (0,1) */
	Assignment w = priority_witness(enc, {a_e}, {{"m_val", true}, {"m1", false}});
	EXPECT_EQ(verify_witness(enc.problem, w), WitnessCheck::Holds);
	EXPECT_EQ(sorted(decode_priority(sys, enc, w).invariant), (std::vector<GlobalState>{{0, 0}, {0, 1}}));
}

TEST(Priority, OracleExamples)
{
	ComponentSystem sys = paper_priority_system();
	PriorityOracle none = oracle_priority(sys, {});
	ASSERT_EQ(none.kind, PriorityOracle::Kind::Unsafe);
	EXPECT_EQ(none.trace.front(), (GlobalState{0, 0}));
	EXPECT_EQ(none.trace.back(), (GlobalState{1, 1}));
	/* every subset of {a<c, c<a}: (0,0) always keeps an enabled action */
	for (int mask = 0; mask < 4; ++mask) {
		std::set<Priority> ps;
		if (mask & 1)
			ps.insert(a_c);
		if (mask & 2)
			ps.insert(c_a);
		PriorityOracle o = oracle_priority(sys, ps);
		bool stuck = o.kind == PriorityOracle::Kind::Deadlock && o.state == GlobalState{0, 0};
		EXPECT_FALSE(stuck) << mask;
	}
}

TEST(Priority, InitialRiskStateIsInvalid)
{
	ComponentSystem sys = paper_priority_system();
	sys.risk.push_back(sys.initial());
	PriorityEncoding enc = encode_priority(sys, paper_priority_templates());
	EXPECT_TRUE(solve(enc.problem).invalid());
}

TEST(Priority, EmptyTemplateListIsAnEncodingError)
{
	try {
		encode_priority(paper_priority_system(), {});
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind, ErrorKind::Encoding);
	}
}

/* ---- hybrid ------------------------------------------------------------- */

TEST(Hybrid, ProseWitnessVerifiesAndSimulates)
{
	HybridSystem sys = paper_hybrid_system();
	HybridEncoding enc = encode_hybrid(sys);
	enc.problem.validate();
	HybridSolution s;
	s.params = {{"alpha", 10}, {"beta", 10}, {"eta", 6}, {"gamma", Rational(-20, 6)}};
	s.params["gamma"].canonicalize();
	/* heat from 100 for 10 s, cool from 120 for 6 s */
	s.entry = {{100, 100}, {120, 120}};
	Assignment w = hybrid_witness(enc, s);
	EXPECT_EQ(verify_witness(enc.problem, w), WitnessCheck::Holds);
	SimulationReport r = simulate_hybrid(sys, s);
	EXPECT_TRUE(r.ok) << r.failure;
	EXPECT_EQ(r.steps, 10000u);
	EXPECT_GT(r.jumps, 0u);

	/* the tuple exactly as printed, gamma = 6, heats forever */
	s.params["eta"] = Rational(-20, 6);
	s.params["eta"].canonicalize();
	s.params["gamma"] = 6;
	Assignment printed = hybrid_witness(enc, s);
	EXPECT_NE(verify_witness(enc.problem, printed), WitnessCheck::Holds);
}

TEST(Hybrid, SolvedInvariantContainsTheSimulation)
{
	HybridSystem sys = paper_hybrid_system();
	HybridEncoding enc = encode_hybrid(sys);
	EngineConfig cfg;
	cfg.projection = true;
	Verdict v = solve(enc.problem, cfg);
	ASSERT_TRUE(v.valid()) << v.reason;
	HybridSolution s = decode_hybrid(sys, enc, v.witness);
	SimulationReport r = simulate_hybrid(sys, s, 10000);
	EXPECT_TRUE(r.ok) << r.failure;
	EXPECT_EQ(r.steps, 10000u);
}

TEST(Hybrid, UnsafeInitialValueIsInvalid)
{
	HybridSystem sys = paper_hybrid_system();
	sys.initial_h = 130;
	EngineConfig cfg;
	cfg.projection = true;
	EXPECT_TRUE(solve(encode_hybrid(sys).problem, cfg).invalid());
}

TEST(Hybrid, GammaDeltaIsLinearizable)
{
	EXPECT_TRUE(linearizable(encode_hybrid(paper_hybrid_system()).problem));
}

/* ---- BIBO --------------------------------------------------------------- */

TEST(Bibo, CruiseControlGainsArePositive)
{
	EFProblem p = paper_bibo_problem();
	Verdict v = solve(p);
	ASSERT_TRUE(v.valid()) << v.reason;
	EXPECT_GT(v.witness.number(p.find("k_p")->id), 0);
	EXPECT_GT(v.witness.number(p.find("k_i")->id), 0);
	EXPECT_EQ(verify_witness(p, v.witness), WitnessCheck::Holds);
}

TEST(Bibo, DegreeOne)
{
	EFProblem vars;
	VarId a0 = vars.declare_exists("a0", make_real_sort(-1, 1));
	EFProblem p = encode_bibo({1, V(a0)}, vars);
	Verdict v = solve(p);
	ASSERT_TRUE(v.valid());
	EXPECT_GT(v.witness.number(a0), 0);
}

TEST(Bibo, NumericDegreeFourFailingIsInvalid)
{
	/* a3·a2 = 1 is not above a4·a1 = 2 */
	EFProblem vars;
	vars.declare_exists("k", make_real_sort(0, 1));
	EXPECT_TRUE(solve(encode_bibo({1, 1, 1, 2, 1}, vars)).invalid());
}

/* ---- Lyapunov ----------------------------------------------------------- */

namespace {

/* V̇ = 2az·(2/(2+z) − z − 1) */
Rational vdot(const Rational &a, const Rational &z)
{
	return 2 * a * z * (2 / (2 + z) - z - 1);
}

} // namespace

TEST(Lyapunov, BernsteinRouteSolvesAndVerifies)
{
	LyapunovSpec spec = paper_lyapunov_spec({-5, 5});
	EFProblem p = encode_lyapunov(spec, LyapunovRoute::Bernstein);
	VarId a = p.find("a")->id;
	Assignment w;
	w.set(a, 8);
	w.set(spec.r, 1);
	EXPECT_EQ(verify_witness(p, w), WitnessCheck::Holds);

	Verdict v = solve(p);
	ASSERT_TRUE(v.valid()) << v.reason;
	Rational av = v.witness.number(a), rv = v.witness.number(spec.r);
	EXPECT_GT(av, 0);
	EXPECT_GT(rv, 0);
	/* sampled V > 0 and V̇ ≤ 0 on 0 < |z| < r */
	Rng rng(61);
	Interval zone{-rv, rv};
	for (int i = 0; i < 10000; ++i) {
		Rational z = in_interval(rng, zone, 100000);
		if (z == 0 || z == -rv || z == rv)
			continue;
		ASSERT_GT(av * z * z, 0);
		ASSERT_LE(vdot(av, z), 0) << to_string(z);
	}
}

TEST(Lyapunov, StrengthenedRouteAcceptsThirtyTwo)
{
	LyapunovSpec spec = paper_lyapunov_spec({-10, 10});
	/* a = 1024/32 needs a wider box than [0, 10] */
	for (VarDecl &d : spec.skeleton.exists_vars)
		if (d.name == "a")
			d.sort = make_real_sort(0, 64);
	EFProblem p = encode_lyapunov(spec, LyapunovRoute::StrengthenedBV, Rational(1, 32));
	Assignment w;
	w.set(p.find("a")->id, 32);
	w.set(spec.r, 1);
	EXPECT_EQ(verify_witness(p, w), WitnessCheck::Holds);
}

TEST(Lyapunov, PrintedSystemRejectsThirtyTwo)
{
	/* as printed, z = 0 satisfies the assumptions and no guarantee disjunct */
	EFProblem p = paper_lyapunov_printed(Rational(1, 32));
	Assignment w;
	w.set(p.find("a")->id, 10);	/* 32 is outside the printed [0, 10] box */
	w.set(p.find("r")->id, 1);
	EXPECT_EQ(verify_witness(p, w), WitnessCheck::Fails);
	Assignment at = w;
	at.set(p.find("z")->id, 0);
	EXPECT_FALSE(evaluate(p.matrix, at));
}

TEST(Lyapunov, NonPositiveEnergyIsInvalid)
{
	LyapunovSpec spec = paper_lyapunov_spec({-5, 5});
	for (VarDecl &d : spec.skeleton.exists_vars)
		if (d.name == "a")
			d.sort = make_real_sort(-1, 0);
	EXPECT_TRUE(solve(encode_lyapunov(spec, LyapunovRoute::Bernstein)).invalid());
}

/* ---- pendulum ----------------------------------------------------------- */

namespace {

Assignment pendulum_candidate(Rng &rng, const PendulumEncoding &e)
{
	Assignment c;
	c.set(e.xb1, Rational(rational(rng, 1, 10, 10) / 10));
	c.set(e.xb2, Rational(rational(rng, 1, 10, 10) / 10));
	c.set(e.kp, rational(rng, -100, 100, 4));
	c.set(e.kd, rational(rng, -100, 100, 4));
	c.set(e.a, rational(rng, 1, 10, 4));
	c.set(e.b, rational(rng, 1, 10, 4));
	return c;
}

} // namespace

TEST(Pendulum, StrictInstanceIsRefutedOnTheAxis)
{
	PendulumEncoding e = pendulum_preset();
	Rng rng(71);
	for (int i = 0; i < 200; ++i) {
		Assignment c = pendulum_candidate(rng, e);
		Rational k = c.number(e.xb1) * rational(rng, 1, 9, 10) / 10;
		if (uniform(rng, 0, 1))
			k = -k;
		c.set(e.x1, k);
		c.set(e.x2, 0);
		c.set(e.M2, in_interval(rng, PendulumParams{}.M2));
		c.set(e.l, in_interval(rng, PendulumParams{}.l));
		ASSERT_EQ(e.vdot.evaluate(c), 0);
		ASSERT_FALSE(evaluate(e.problem.matrix, c));
	}
}

TEST(Pendulum, WeakInstanceIsSymmetricUnderStateNegation)
{
	PendulumParams pp;
	pp.strict = false;
	PendulumEncoding e = pendulum_preset(pp);
	Rng rng(72);
	for (int i = 0; i < 500; ++i) {
		Assignment c = pendulum_candidate(rng, e);
		c.set(e.b, c.number(e.a));
		for (VarId v : {e.x1, e.x2})
			c.set(v, rational(rng, -1, 1, 64));
		c.set(e.M2, in_interval(rng, pp.M2));
		c.set(e.l, in_interval(rng, pp.l));
		Assignment f = c;
		f.set(e.x1, Rational(-c.number(e.x1)));
		f.set(e.x2, Rational(-c.number(e.x2)));
		ASSERT_EQ(e.vdot.evaluate(f), e.vdot.evaluate(c));
		ASSERT_EQ(evaluate(e.problem.matrix, f), evaluate(e.problem.matrix, c));
	}
}

TEST(Pendulum, VdotMatchesFiniteDifferences)
{
	PendulumEncoding e = pendulum_preset();
	Rng rng(73);
	for (int i = 0; i < 100; ++i) {
		Assignment c = pendulum_candidate(rng, e);
		c.set(e.M2, in_interval(rng, {Rational(1, 2), Rational(7, 10)}));
		c.set(e.l, in_interval(rng, {Rational(1, 10), Rational(1, 5)}));
		c.set(e.x1, rational(rng, -1, 1, 64));
		c.set(e.x2, rational(rng, -1, 1, 64));
		if (c.number(e.x1) == 0 && c.number(e.x2) == 0)
			continue;
		/* RK4 on ẋ1 = x2, ẋ2 = num/den, both directions in time */
		auto field = [&](std::array<double, 2> x) {
			Assignment a = c;
			a.set(e.x1, Rational(x[0]));
			a.set(e.x2, Rational(x[1]));
			return std::array<double, 2>{x[1], to_double(e.theta_num.evaluate(a)) /
			                                           to_double(e.theta_den.evaluate(a))};
		};
		auto step = [&](std::array<double, 2> x, double h) {
			auto k1 = field(x);
			auto k2 = field({x[0] + h / 2 * k1[0], x[1] + h / 2 * k1[1]});
			auto k3 = field({x[0] + h / 2 * k2[0], x[1] + h / 2 * k2[1]});
			auto k4 = field({x[0] + h * k3[0], x[1] + h * k3[1]});
			return std::array<double, 2>{x[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
			                             x[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
		};
		double a = to_double(c.number(e.a)), b = to_double(c.number(e.b));
		auto energy = [&](std::array<double, 2> x) { return a * x[0] * x[0] + b * x[1] * x[1]; };
		std::array<double, 2> x0{to_double(c.number(e.x1)), to_double(c.number(e.x2))};
		/* fourth-order central stencil; the closed loop is stiff for large gains */
		const double h = 1e-6;
		double fd = (-energy(step(x0, 2 * h)) + 8 * energy(step(x0, h)) - 8 * energy(step(x0, -h)) +
		             energy(step(x0, -2 * h))) / (12 * h);
		double exact = to_double(e.vdot.evaluate(c)) / to_double(e.theta_den.evaluate(c));
		ASSERT_LE(std::abs(fd - exact), 1e-6 * std::max(1.0, std::abs(exact))) << i;
	}
}
