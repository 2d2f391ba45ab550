/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/frontend.hpp"

#include <chrono>
#include <cstdio>

namespace efsmt {

namespace {

std::vector<Binding> named(const Assignment &a, const EFProblem &p)
{
	std::vector<Binding> out;
	for (const auto &[v, x] : a)
		out.emplace_back(p.name(v), x);
	return out;
}

std::string seconds_str(double s)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3f", s);
	return buf;
}

std::string quote(const std::string &s)
{
	std::string r = "\"";
	for (char c : s) {
		if (c == '"' || c == '\\')
			r += '\\';
		r += c;
	}
	return r + "\"";
}

std::string human_value(const Value &v)
{
	if (auto *q = std::get_if<Rational>(&v)) {
		std::string s = to_string(*q);
		return is_integer(*q) ? s : s + " (" + to_decimal(*q) + ")";
	}
	return to_string(v);
}

std::string sexp_binding(const Binding &b)
{
	std::string r = "(" + print_symbol(b.first) + " " + to_string(b.second);
	if (auto *q = std::get_if<Rational>(&b.second))
		r += " " + quote(to_decimal(*q));
	return r + ")";
}

const char *verification(const RunReport &r)
{
	if (r.verification_inconclusive)
		return "inconclusive";
	return r.verified ? "holds" : "skipped";
}

} // namespace

RunReport run(const Job &job, EngineConfig cfg)
{
	if (cfg.strategy == Strategy::AUTO && job.strategy)
		cfg.strategy = *job.strategy;
	cfg.projection = cfg.projection || job.projection;
	auto t0 = std::chrono::steady_clock::now();
	Verdict v = solve(job.problem, cfg);
	RunReport r;
	r.verdict = v.kind;
	r.reason = v.reason;
	r.strategy = v.strategy;
	r.preset = job.preset;
	r.stats = v.stats;
	r.verification_inconclusive = v.verification_inconclusive;
	if (v.valid()) {
		r.witness = named(v.witness, job.problem);
		r.verified = cfg.verify_witness && !v.verification_inconclusive;
	}
	r.traced = cfg.trace;
	for (const TraceStep &s : v.trace)
		if (s.counterexample)
			r.counterexamples.push_back(named(*s.counterexample, job.problem));
	if (job.describe)
		r.notes = job.describe(v);
	r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return r;
}

std::string render_human(const RunReport &r)
{
	std::string out = std::string("verdict: ") + verdict_name(r.verdict) + "\n";
	out += std::string("strategy: ") + strategy_name(r.strategy) + "\n";
	if (!r.preset.empty())
		out += "preset: " + r.preset + "\n";
	if (!r.reason.empty())
		out += "reason: " + r.reason + "\n";
	if (r.verdict == Verdict::Kind::Valid) {
		out += "witness:\n";
		for (const Binding &b : r.witness)
			out += "  " + b.first + " = " + human_value(b.second) + "\n";
		out += std::string("verification: ") + verification(r) + "\n";
	}
	out += "iterations: " + std::to_string(r.stats.iterations) + "\n";
	out += "counterexamples: " + std::to_string(r.stats.counterexamples) + "\n";
	if (r.traced)
		for (std::size_t i = 0; i < r.counterexamples.size(); ++i) {
			out += "  " + std::to_string(i + 1) + ":";
			for (const Binding &b : r.counterexamples[i])
				out += " " + b.first + " = " + human_value(b.second);
			out += "\n";
		}
	out += "f-checks: " + std::to_string(r.stats.f_checks) + "\n";
	out += "extrapolation-blocks: " + std::to_string(r.stats.extrapolation_blocks) + "\n";
	out += "e-nodes: " + std::to_string(r.stats.e_nodes) + "\n";
	out += "f-nodes: " + std::to_string(r.stats.f_nodes) + "\n";
	out += "bernstein-boxes: " + std::to_string(r.stats.bernstein_boxes) + "\n";
	for (const std::string &n : r.notes)
		out += "note: " + n + "\n";
	out += "time: " + seconds_str(r.seconds) + "s\n";
	return out;
}

std::string render_sexp(const RunReport &r)
{
	std::string out = std::string("(report (verdict ") + verdict_name(r.verdict) + ")";
	out += std::string(" (strategy ") + strategy_name(r.strategy) + ")";
	if (!r.preset.empty())
		out += " (preset " + r.preset + ")";
	if (!r.reason.empty())
		out += " (reason " + quote(r.reason) + ")";
	if (r.verdict == Verdict::Kind::Valid) {
		out += " (witness";
		for (const Binding &b : r.witness)
			out += " " + sexp_binding(b);
		out += std::string(") (verification ") + verification(r) + ")";
	}
	out += " (iterations " + std::to_string(r.stats.iterations) + ")";
	out += " (counterexamples " + std::to_string(r.stats.counterexamples) + ")";
	if (r.traced) {
		out += " (trace";
		for (const auto &cex : r.counterexamples) {
			out += " (";
			for (std::size_t i = 0; i < cex.size(); ++i)
				out += (i ? " " : "") + sexp_binding(cex[i]);
			out += ")";
		}
		out += ")";
	}
	out += " (f-checks " + std::to_string(r.stats.f_checks) + ")";
	out += " (extrapolation-blocks " + std::to_string(r.stats.extrapolation_blocks) + ")";
	out += " (e-nodes " + std::to_string(r.stats.e_nodes) + ")";
	out += " (f-nodes " + std::to_string(r.stats.f_nodes) + ")";
	out += " (bernstein-boxes " + std::to_string(r.stats.bernstein_boxes) + ")";
	if (!r.notes.empty()) {
		out += " (notes";
		for (const std::string &n : r.notes)
			out += " " + quote(n);
		out += ")";
	}
	out += " (time " + seconds_str(r.seconds) + "))";
	return out;
}

} // namespace efsmt
