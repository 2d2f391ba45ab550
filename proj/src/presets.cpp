/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/encoders.hpp"
#include "efsmt/frontend.hpp"

#include <memory>

namespace efsmt {

namespace {

class Args {
public:
	Args(const PresetCall &c, std::vector<std::string> known) : call_(c)
	{
		for (const auto &[k, v] : c.args) {
			bool ok = false;
			for (const auto &n : known)
				ok = ok || n == k;
			if (!ok)
				throw ParseError(c.loc, "preset " + c.name + " has no argument '" + k + "'");
		}
	}

	std::string choice(const std::string &key, std::vector<std::string> values)
	{
		const std::string *v = call_.arg(key);
		if (!v)
			return values.front();
		for (const auto &x : values)
			if (x == *v)
				return x;
		std::string all;
		for (const auto &x : values)
			all += (all.empty() ? "" : "|") + x;
		throw ParseError(call_.loc, key + " must be one of " + all);
	}

	Rational number(const std::string &key, const Rational &fallback)
	{
		const std::string *v = call_.arg(key);
		if (!v)
			return fallback;
		try {
			return parse_rational(*v);
		} catch (const RationalSyntaxError &e) {
			throw ParseError(call_.loc, key + ": " + e.what());
		}
	}

private:
	const PresetCall &call_;
};

std::string state_str(const GlobalState &s)
{
	std::string r = "(";
	for (std::size_t i = 0; i < s.size(); ++i)
		r += (i ? "," : "") + std::to_string(s[i]);
	return r + ")";
}

Job priority_job(const PresetCall &c)
{
	Args args(c, {"channel"});
	bool channel = args.choice("channel", {"off", "on"}) == "on";
	auto sys = std::make_shared<ComponentSystem>(paper_priority_system(channel));
	auto enc = std::make_shared<PriorityEncoding>(encode_priority(*sys, paper_priority_templates()));
	Job job;
	job.problem = enc->problem;
	job.describe = [sys, enc](const Verdict &v) {
		std::vector<std::string> out;
		if (!v.valid())
			return out;
		PrioritySolution s = decode_priority(*sys, *enc, v.witness);
		std::string line = "priorities:";
		for (const auto &[lo, hi] : s.priorities)
			line += " " + lo + "<" + hi;
		out.push_back(line);
		line = "invariant:";
		for (const auto &st : s.invariant)
			line += " " + state_str(st);
		out.push_back(line);
		PriorityOracle o = oracle_priority(*sys, s.priorities);
		if (o.kind == PriorityOracle::Kind::Safe)
			out.push_back("oracle: safe");
		else if (o.kind == PriorityOracle::Kind::Deadlock)
			out.push_back("oracle: deadlock at " + state_str(o.state));
		else
			out.push_back("oracle: unsafe, reaches " + state_str(o.trace.back()));
		return out;
	};
	return job;
}

Job hybrid_job(const PresetCall &c, const std::optional<Rational> &step)
{
	Args args(c, {"step", "steps"});
	Rational st = args.number("step", step.value_or(Rational(1, 3)));
	Rational n = args.number("steps", 10000);
	if (st < 0)
		throw ParseError(c.loc, "step must be non-negative");
	if (!is_integer(n) || n < 0 || n > 10000000)
		throw ParseError(c.loc, "steps must be an integer in [0, 10^7]");
	auto sys = std::make_shared<HybridSystem>(paper_hybrid_system(st));
	auto enc = std::make_shared<HybridEncoding>(encode_hybrid(*sys));
	unsigned steps = static_cast<unsigned>(n.get_num().get_ui());
	Job job;
	job.problem = enc->problem;
	job.projection = true;
	job.describe = [sys, enc, steps](const Verdict &v) {
		std::vector<std::string> out;
		if (!v.valid())
			return out;
		HybridSolution s = decode_hybrid(*sys, *enc, v.witness);
		for (std::size_t m = 0; m < s.entry.size(); ++m)
			out.push_back("mode " + std::to_string(m) + ": " + to_string(s.entry[m].lo) +
			              " <= h - rate*t <= " + to_string(s.entry[m].hi));
		SimulationReport r = simulate_hybrid(*sys, s, steps);
		out.push_back(r.ok ? "simulation: ok, " + std::to_string(r.steps) + " steps, " +
		                     std::to_string(r.jumps) + " jumps"
		                   : "simulation: failed at " + r.failure);
		return out;
	};
	return job;
}

Job lyapunov_job(const PresetCall &c, const std::optional<Rational> &step)
{
	Args args(c, {"route", "step", "box"});
	std::string route = args.choice("route", {"bernstein", "bv", "printed"});
	Rational st = args.number("step", step.value_or(Rational(1, 32)));
	if (st <= 0)
		throw ParseError(c.loc, "step must be positive");
	Job job;
	if (route == "printed") {
		job.problem = paper_lyapunov_printed(st);
	} else {
		Rational box = args.number("box", route == "bv" ? 10 : 5);
		if (box <= 0)
			throw ParseError(c.loc, "box must be positive");
		LyapunovSpec spec = paper_lyapunov_spec({-box, box});
		job.problem = encode_lyapunov(spec, route == "bv" ? LyapunovRoute::StrengthenedBV
		                                                  : LyapunovRoute::Bernstein, st);
	}
	const EFProblem p = job.problem;
	job.describe = [p](const Verdict &v) {
		std::vector<std::string> out;
		if (v.valid())
			out.push_back("certificate: V = " + to_string(v.witness.number(p.find("a")->id)) +
			              "*z^2 on |z| < " + to_string(v.witness.number(p.find("r")->id)));
		return out;
	};
	return job;
}

Job pendulum_job(const PresetCall &c)
{
	Args args(c, {"instance"});
	PendulumParams pp;
	pp.strict = args.choice("instance", {"strict", "weak"}) == "strict";
	Job job;
	job.problem = pendulum_preset(pp).problem;
	return job;
}

} // namespace

const std::vector<std::pair<std::string, std::string>> &preset_list()
{
	static const std::vector<std::pair<std::string, std::string>> list = {
		{"priority-demo", "channel=off|on"},
		{"hybrid-temperature", "step=<rational, 0 for reals> steps=<simulation steps>"},
		{"bibo-cruise", ""},
		{"lyapunov", "route=bernstein|bv|printed step=<rational> box=<rational>"},
		{"pendulum", "instance=strict|weak"},
	};
	return list;
}

Job make_job(const ProblemFile &f, const std::optional<Rational> &step)
{
	Job job;
	if (!f.preset)
		job.problem = f.problem();
	else {
		const PresetCall &c = *f.preset;
		try {
			if (c.name == "priority-demo")
				job = priority_job(c);
			else if (c.name == "hybrid-temperature")
				job = hybrid_job(c, step);
			else if (c.name == "bibo-cruise") {
				Args(c, {});
				job.problem = paper_bibo_problem();
			} else if (c.name == "lyapunov")
				job = lyapunov_job(c, step);
			else if (c.name == "pendulum")
				job = pendulum_job(c);
			else
				throw ParseError(c.loc, "unknown preset '" + c.name + "'");
		} catch (const ParseError &) {
			throw;
		} catch (const Error &e) {
			if (e.kind != ErrorKind::Encoding)
				throw;
			throw ParseError(c.loc, e.what());
		}
		job.preset = c.name;
	}
	job.strategy = f.strategy;
	return job;
}

Job make_job(std::string_view text, const std::optional<Rational> &step)
{
	return make_job(parse_problem(text), step);
}

} // namespace efsmt
