/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 *
 * One PASS/FAIL line per acceptance criterion. Exit status is the number of
 * failing criteria.
 */

#include "support.hpp"

#include "efsmt/encoders.hpp"
#include "efsmt/engine.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace efsmt;
using namespace efsmt::test;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
	bool ok = true;
	std::ostringstream note;

	void require(bool cond, const std::string &what)
	{
		if (!cond) {
			ok = false;
			note << (note.tellp() > 0 ? "; " : "") << "FAILED " << what;
		}
	}
	void info(const std::string &what) { note << (note.tellp() > 0 ? "; " : "") << what; }
};

double seconds_since(Clock::time_point t0)
{
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s)
{
	std::ostringstream o;
	o.setf(std::ios::fixed);
	o.precision(3);
	o << s << "s";
	return o.str();
}

Polynomial V(VarId v) { return Polynomial::var(v); }

Assignment at(VarId v, const Rational &q)
{
	Assignment a;
	a.set(v, q);
	return a;
}

/* f ⇒ g over the declared variables, checked by unsatisfiability of f ∧ ¬g. */
bool implies_linear(const std::vector<VarDecl> &vars, const Formula &f, const Formula &g)
{
	auto s = make_linear_session(vars);
	s->assert_formula(f);
	s->assert_formula(Formula::negation(g));
	return s->check().is_unsat();
}

/* ---- criteria ----------------------------------------------------------- */

void eq2(Outcome &o)
{
	EFProblem p;
	VarId x = p.declare_exists("x", make_real_sort(-30, 30));
	VarId y = p.declare_forall("y", make_real_sort(-30, 30));
	p.matrix = Formula::implies(Formula::cmp(make_cmp(0, CmpOp::Lt, V(y))) && Formula::cmp(V(y), CmpOp::Lt, 10),
	                            Formula::cmp(V(y) - 2 * V(x), CmpOp::Lt, 7));
	EngineConfig cfg;
	cfg.strategy = Strategy::LA_LA;
	cfg.max_iterations = 20;
	cfg.trace = true;
	auto t0 = Clock::now();
	Verdict v = solve(p, cfg);
	double t = seconds_since(t0);
	o.require(v.valid(), "valid within 20 iterations");
	o.info("valid in " + std::to_string(v.stats.iterations) + " iterations");
	if (v.valid())
		o.require(v.witness.number(x) >= Rational(3, 2), "witness x >= 3/2");
	bool first_ok = !v.trace.empty() && v.trace.front().candidate.number(x) == 0 && v.trace.front().learned;
	o.require(first_ok, "first candidate x = 0 with a learned constraint");
	if (first_ok) {
		std::vector<VarDecl> xs = p.exists_vars;
		Formula learned = *v.trace.front().learned, above = Formula::cmp(V(x), CmpOp::Gt, 1);
		bool equiv = implies_linear(xs, learned, above) && implies_linear(xs, above, learned);
		o.require(equiv, "first learned constraint equivalent to x > 1");
		if (equiv)
			o.info("first learned constraint <=> x > 1");
	}
	o.require(t < 1, "runtime < 1 s");
	o.info(secs(t));
}

EFProblem converging()
{
	EFProblem p;
	VarId x = p.declare_exists("x", make_real_sort(0, 10));
	VarId y = p.declare_forall("y", make_real_sort(0, 10));
	p.matrix = Formula::cmp(make_cmp(V(y), CmpOp::Ge, V(x)));
	return p;
}

void extrapolation(Outcome &o)
{
	EngineConfig cfg;
	cfg.max_iterations = 20;
	Verdict on = solve(converging(), cfg);
	o.require(on.valid() && on.witness.number(0) == 0, "extrapolate on: valid with x = 0 within 20 iterations");
	o.info("on: " + std::string(verdict_name(on.kind)) + " x = " +
	       (on.valid() ? to_string(on.witness.number(0)) : "-") + " in " +
	       std::to_string(on.stats.iterations) + " iterations");
	cfg.extrapolation = false;
	cfg.max_iterations = 50;
	Verdict off = solve(converging(), cfg);
	o.require(off.unknown() && off.stats.iterations == 50, "extrapolate off: unknown at the cap");
	o.info("off: " + std::string(verdict_name(off.kind)) + " after " + std::to_string(off.stats.iterations));
}

EFProblem incomplete(Sort xs)
{
	EFProblem p;
	VarId x = p.declare_exists("x", xs);
	VarId y = p.declare_forall("y", make_real_sort(0, 10));
	p.matrix = Formula::cmp(V(x), CmpOp::Gt, 0) &&
	           Formula::implies(Formula::cmp(V(y), CmpOp::Gt, 0) && Formula::cmp(make_cmp(V(y), CmpOp::Ne, V(x))),
	                            Formula::cmp(make_cmp(V(y), CmpOp::Gt, V(x))));
	return p;
}

void incompleteness(Outcome &o)
{
	auto t0 = Clock::now();
	EngineConfig cfg;
	cfg.max_iterations = 50;
	Verdict real = solve(incomplete(make_real_sort(0, 10)), cfg);
	o.require(real.unknown(), "real exists sort: unknown at the cap");
	o.info("real: " + std::string(verdict_name(real.kind)));
	cfg.max_iterations = 1000;
	EFProblem fp = incomplete(make_fixed_sort(0, 10, Rational(1, 32)));
	Verdict fixed = solve(fp, cfg);
	o.require(fixed.invalid(), "fixed(1/32) exists sort: invalid");
	/* oracle: x = 0 breaks x > 0, every other grid x is refuted by y = x/2 */
	bool oracle_invalid = true;
	for (const Value &xv : domain(fp.exists_vars[0].sort)) {
		const Rational &q = std::get<Rational>(xv);
		Assignment a = at(0, q);
		a.set(1, Rational(q / 2));
		oracle_invalid = oracle_invalid && !evaluate(fp.matrix, a);
	}
	o.require(oracle_invalid, "brute-force oracle confirms invalid");
	o.info("fixed: " + std::string(verdict_name(fixed.kind)) + ", oracle invalid over 321 grid points");
	double t = seconds_since(t0);
	o.require(t < 5, "runtime < 5 s");
	o.info(secs(t));
}

Polynomial reexpand(const BernsteinTensor &t)
{
	Polynomial sum;
	for (std::size_t flat = 0; flat < t.size(); ++flat) {
		auto idx = t.multi_index(flat);
		Polynomial term(t.coeffs[flat]);
		for (std::size_t i = 0; i < t.vars.size(); ++i) {
			Polynomial x = V(t.vars[i]);
			term *= binomial(t.degrees[i], idx[i]);
			term *= x.pow(idx[i]) * (Polynomial(1) - x).pow(t.degrees[i] - idx[i]);
		}
		sum += term;
	}
	return sum;
}

void bernstein(Outcome &o)
{
	Polynomial x = V(0);
	Polynomial p = x * x - 4 * x + 4;
	AtomVerdict v = check_atom(make_cmp(p, CmpOp::Gt, Polynomial(-3)), {{0, {1, 3}}});
	o.require(v.proved() && v.boxes == 1, "proved at depth 0");
	Polynomial q = normalize_box(p, {{0, {1, 3}}});
	BernsteinTensor t = to_bernstein(q, {0}, {2}, {{0, {0, 1}}});
	o.require(reexpand(t) == q, "re-expansion oracle reproduces 4y^2 - 4y + 1");
	o.require(t.coeffs == std::vector<Rational>{1, -1, 1}, "coefficients (1, -1, 1)");
	o.info("proved in " + std::to_string(v.boxes) + " box, coefficients (" + to_string(t.coeffs[0]) + "," +
	       to_string(t.coeffs[1]) + "," + to_string(t.coeffs[2]) + ")");

	Rng rng(32);
	unsigned violations = 0, samples = 0;
	for (int i = 0; i < 1000; ++i) {
		std::vector<VarId> vars;
		for (long n = uniform(rng, 1, 3), k = 0; k < n; ++k)
			vars.push_back(static_cast<VarId>(k));
		Polynomial r = random_poly(rng, vars, 4, static_cast<unsigned>(uniform(rng, 1, 6)));
		Box box;
		for (VarId w : vars) {
			Rational lo = rational(rng, -3, 3, 4);
			box[w] = {lo, lo + rational(rng, 1, 4, 4)};
		}
		BernsteinTensor bt = bernstein_of(r, box);
		Rational lo = bt.min(), hi = bt.max();
		for (int s = 0; s < 100; ++s, ++samples) {
			Assignment a;
			for (const auto &[w, iv] : box)
				a.set(w, in_interval(rng, iv));
			Rational val = r.evaluate(a);
			violations += val < lo || val > hi;
		}
	}
	o.require(violations == 0, "enclosure suite without violations");
	o.info("enclosure " + std::to_string(samples) + " samples, " + std::to_string(violations) + " violations");
}

void priority(Outcome &o)
{
	auto t0 = Clock::now();
	const Priority a_d{"a", "d"}, c_b{"c", "b"}, a_e{"a", "e"};
	ComponentSystem sys = paper_priority_system();
	PriorityEncoding enc = encode_priority(sys, paper_priority_templates());
	o.require(enc.priority_vars.size() == 25 && enc.template_vars.size() == 8 &&
	                  enc.problem.forall_vars.size() == 4,
	          "variable counts 25 / 8 / 4");
	Verdict v = solve(enc.problem);
	o.require(v.valid(), "base system valid");
	if (v.valid()) {
		PrioritySolution s = decode_priority(sys, enc, v.witness);
		o.require(oracle_priority(sys, s.priorities).safe(), "solved priorities pass the oracle");
		std::string ps;
		for (const auto &[lo, hi] : s.priorities)
			ps += (ps.empty() ? "" : " ") + lo + "<" + hi;
		o.info("solved {" + ps + "}");
	}
	Assignment w = priority_witness(enc, {a_d, c_b},
	                                {{"m_val", true}, {"m1", false}, {"n_val", true}, {"n1", true}, {"n2", false}});
	o.require(verify_witness(enc.problem, w) == WitnessCheck::Holds, "paper witness {a<d, c<b} verifies");

	ComponentSystem ch = paper_priority_system(true);
	PriorityEncoding enc2 = encode_priority(ch, paper_priority_templates());
	Verdict v2 = solve(enc2.problem);
	o.require(v2.valid(), "channel-restricted system valid");
	if (v2.valid())
		o.require(oracle_priority(ch, decode_priority(ch, enc2, v2.witness).priorities).safe(),
		          "channel-restricted solution passes the oracle");
	Assignment w2 = priority_witness(enc2, {a_e}, {{"m_val", true}, {"m1", false}});
	o.require(verify_witness(enc2.problem, w2) == WitnessCheck::Holds, "paper witness {a<e} verifies");
	double t = seconds_since(t0);
	o.require(t < 30, "runtime < 30 s");
	o.info("paper witnesses verify; " + secs(t));
}

void hybrid(Outcome &o)
{
	auto t0 = Clock::now();
	HybridSystem sys = paper_hybrid_system();
	HybridEncoding enc = encode_hybrid(sys);
	HybridSolution prose;
	prose.params = {{"alpha", 10}, {"beta", 10}, {"eta", 6}, {"gamma", ratio(-20, 6)}};
	prose.entry = {{100, 100}, {120, 120}};
	o.require(verify_witness(enc.problem, hybrid_witness(enc, prose)) == WitnessCheck::Holds,
	          "prose witness verifies");
	EngineConfig cfg;
	cfg.projection = true;
	Verdict v = solve(enc.problem, cfg);
	o.require(v.valid(), "solver finds a witness");
	if (v.valid()) {
		HybridSolution s = decode_hybrid(sys, enc, v.witness);
		SimulationReport r = simulate_hybrid(sys, s, 10000);
		o.require(r.ok && r.steps == 10000, "10^4-step simulation stays in the invariant");
		o.info("alpha=" + to_string(s.params["alpha"]) + " beta=" + to_string(s.params["beta"]) +
		       " eta=" + to_string(s.params["eta"]) + " gamma=" + to_string(s.params["gamma"]) +
		       ", simulation " + std::to_string(r.steps) + " steps " + std::to_string(r.jumps) + " jumps");
	}
	double t = seconds_since(t0);
	o.require(t < 30, "runtime < 30 s");
	o.info(secs(t));
}

void bibo(Outcome &o)
{
	EFProblem p = paper_bibo_problem();
	Verdict v = solve(p);
	o.require(v.valid(), "cruise control valid");
	if (v.valid()) {
		Rational kp = v.witness.number(p.find("k_p")->id), ki = v.witness.number(p.find("k_i")->id);
		o.require(kp > 0 && ki > 0, "k_p > 0 and k_i > 0");
		o.require(verify_witness(p, v.witness) == WitnessCheck::Holds, "witness verifies");
		o.info("k_p=" + to_string(kp) + " k_i=" + to_string(ki));
	}
	Rng rng(52);
	unsigned compared = 0, disagreements = 0, excluded = 0;
	while (compared < 100) {
		std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 5));
		std::vector<Rational> c(n + 1);
		for (Rational &x : c)
			x = uniform(rng, 0, 9) < 7 ? rational(rng, 1, 9) : rational(rng, -3, 9);
		if (c[0] == 0)
			c[0] = 1;
		auto dim = static_cast<Eigen::Index>(n);
		Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
		for (Eigen::Index j = 0; j < dim; ++j)
			m(0, j) = -to_double(c[static_cast<std::size_t>(j + 1)]) / to_double(c[0]);
		for (Eigen::Index i = 1; i < dim; ++i)
			m(i, i - 1) = 1;
		Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
		bool near_axis = false, stable = true;
		for (Eigen::Index i = 0; i < roots.size(); ++i) {
			near_axis = near_axis || std::abs(roots[i].real()) < 1e-6;
			stable = stable && roots[i].real() < -1e-9;
		}
		if (near_axis) {
			++excluded;
			continue;
		}
		++compared;
		bool routh = true;
		try {
			for (const Polynomial &e : routh_first_column(std::vector<Polynomial>(c.begin(), c.end())))
				routh = routh && e.constant() > 0;
		} catch (const Error &) {
			routh = false;	/* a zero pivot rules out stability */
		}
		disagreements += routh != stable;
	}
	o.require(disagreements == 0, "Routh agrees with numeric roots");
	o.info("Routh vs roots: " + std::to_string(compared) + " compared, " + std::to_string(disagreements) +
	       " disagreements, " + std::to_string(excluded) + " near-axis excluded");
}

void lyapunov(Outcome &o)
{
	auto t0 = Clock::now();
	LyapunovSpec spec = paper_lyapunov_spec({-5, 5});
	EFProblem eq7 = encode_lyapunov(spec, LyapunovRoute::Bernstein);
	Assignment w;
	w.set(eq7.find("a")->id, 8);
	w.set(spec.r, 1);
	o.require(verify_witness(eq7, w) == WitnessCheck::Holds, "bernstein: (8,1) verifies");
	Verdict v = solve(eq7);
	o.require(v.valid() && verify_witness(eq7, v.witness) == WitnessCheck::Holds,
	          "bernstein: solver finds a verified witness");
	if (v.valid())
		o.info("bernstein: (8,1) holds, solver (" + to_string(v.witness.number(eq7.find("a")->id)) + "," +
		       to_string(v.witness.number(spec.r)) + ")");
	double t1 = seconds_since(t0);
	o.require(t1 < 60, "bernstein runtime < 60 s");

	auto t2 = Clock::now();
	EFProblem eq8 = paper_lyapunov_printed(Rational(1, 32));
	Assignment w8;
	w8.set(eq8.find("a")->id, 32);
	w8.set(eq8.find("r")->id, 1);
	WitnessCheck c8 = verify_witness(eq8, w8);
	o.require(c8 == WitnessCheck::Holds, "bv: (32,1) on the printed system (" +
	                                         std::string(witness_check_name(c8)) + ")");
	Verdict v8 = solve(eq8);
	o.require(v8.valid(), "bv: solver witness on the printed system (" +
	                          std::string(verdict_name(v8.kind)) + ")");
	double t3 = seconds_since(t2);
	o.require(t3 < 60, "bv runtime < 60 s");
	o.info(secs(t1) + " + " + secs(t3));
}

void soundness(Outcome &o)
{
	Rng rng(91);
	unsigned mismatches = 0, valid = 0, invalid = 0, unknown = 0, problems = 0;
	while (problems < 200) {
		EFProblem p;
		long ex = uniform(rng, 1, 2), fa = uniform(rng, 1, 2);
		for (long i = 0; i < ex; ++i)
			p.declare_exists("x" + std::to_string(i),
			                 make_fixed_sort(-1, 1, Rational(1, uniform(rng, 1, 2))));
		for (long i = 0; i < fa; ++i)
			p.declare_forall("y" + std::to_string(i),
			                 make_fixed_sort(-1, 1, Rational(1, uniform(rng, 1, 3))));
		if (uniform(rng, 0, 3) == 0)
			p.declare_exists("b", BoolSort{});
		std::size_t grid = 1;
		for (const VarDecl &d : p.all_vars())
			grid *= domain(d.sort).size();
		if (grid > 200)
			continue;
		++problems;
		p.matrix = random_formula(rng, p.all_vars(), 3, 2, 2);
		EngineConfig cfg;
		cfg.strategy = Strategy::FIXED_FIXED;
		Verdict v = solve(p, cfg);
		bool oracle = brute_force_valid(p);
		if (v.unknown())
			++unknown;
		else if (v.valid())
			++valid;
		else
			++invalid;
		mismatches += v.unknown() || v.valid() != oracle;
	}
	o.require(mismatches == 0, "verdicts match brute force");
	o.info(std::to_string(problems) + " problems: " + std::to_string(valid) + " valid, " +
	       std::to_string(invalid) + " invalid, " + std::to_string(unknown) + " unknown, " +
	       std::to_string(mismatches) + " mismatches");
}

void pendulum(Outcome &o)
{
	PendulumParams pp;
	PendulumEncoding e = pendulum_preset(pp);
	Rng rng(101);
	unsigned refuted = 0, total = 0;
	for (int c = 0; c < 50; ++c) {
		Assignment cand;
		cand.set(e.xb1, Rational(rational(rng, 1, 100, 1) / 100));
		cand.set(e.xb2, Rational(rational(rng, 1, 100, 1) / 100));
		cand.set(e.kp, rational(rng, -100, 100, 8));
		cand.set(e.kd, rational(rng, -100, 100, 8));
		cand.set(e.a, rational(rng, 1, 10, 8));
		cand.set(e.b, rational(rng, 1, 10, 8));
		for (int i = 0; i < 10; ++i, ++total) {
			Rational k = cand.number(e.xb1) * rational(rng, 1, 99, 1) / 100;
			if (uniform(rng, 0, 1))
				k = -k;
			Assignment pt = cand;
			pt.set(e.x1, k);
			pt.set(e.x2, 0);
			pt.set(e.M2, in_interval(rng, pp.M2));
			pt.set(e.l, in_interval(rng, pp.l));
			refuted += !evaluate(e.problem.matrix, pt);
		}
	}
	o.require(refuted == total, "every candidate refuted on the x1 axis");
	o.info(std::to_string(refuted) + "/" + std::to_string(total) + " (candidate, k) pairs refuted at (k, 0)");
}

} // namespace

int main()
{
	const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria = {
		{"running example", eq2},
		{"extrapolation", extrapolation},
		{"incompleteness", incompleteness},
		{"bernstein unit", bernstein},
		{"priority synthesis", priority},
		{"hybrid temperature", hybrid},
		{"bibo cruise control", bibo},
		{"lyapunov", lyapunov},
		{"soundness suite", soundness},
		{"pendulum", pendulum},
	};
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			criteria[i].second(o);
		} catch (const std::exception &e) {
			o.require(false, std::string("exception: ") + e.what());
		}
		failed += !o.ok;
		std::cout << (o.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.note.str()
		          << std::endl;
	}
	return failed;
}
