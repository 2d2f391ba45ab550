/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/frontend.hpp"

#include <cstdio>

namespace efsmt {

const std::vector<std::pair<std::string, std::string>> &paper_corpus()
{
	static const std::vector<std::pair<std::string, std::string>> corpus = {
		{"eq2",
		 "; exists x forall y: (0 < y < 10) -> (y - 2x < 7)\n"
		 "(set-strategy la-la)\n"
		 "(declare-exists x real -30 30)\n"
		 "(declare-forall y real -30 30)\n"
		 "(assume (< 0 y 10))\n"
		 "(guarantee (< (- y (* 2 x)) 7))\n"},
		{"extrapolation",
		 "(declare-exists x real 0 10)\n"
		 "(declare-forall y real 0 10)\n"
		 "(constrain (>= y x))\n"},
		{"incomplete-real",
		 "(declare-exists x real 0 10)\n"
		 "(declare-forall y real 0 10)\n"
		 "(constrain (> x 0))\n"
		 "(constrain (=> (and (> y 0) (distinct y x)) (> y x)))\n"},
		{"incomplete-fixed",
		 "(declare-exists x fixed 0 10 1/32)\n"
		 "(declare-forall y real 0 10)\n"
		 "(constrain (> x 0))\n"
		 "(constrain (=> (and (> y 0) (distinct y x)) (> y x)))\n"},
		{"bernstein-unit",
		 "(set-strategy la-bernstein)\n"
		 "(declare-forall x real 1 3)\n"
		 "(constrain (> (+ (^ x 2) (* -4 x) 4) -3))\n"},
		{"priority", "(preset priority-demo)\n"},
		{"priority-channel", "(preset priority-demo channel=on)\n"},
		{"hybrid", "(preset hybrid-temperature)\n"},
		{"bibo", "(preset bibo-cruise)\n"},
		{"lyapunov-bernstein", "(preset lyapunov route=bernstein)\n"},
		{"lyapunov-bv", "(preset lyapunov route=bv)\n"},
		{"lyapunov-printed", "(preset lyapunov route=printed)\n"},
		{"pendulum", "(preset pendulum instance=strict)\n"},
	};
	return corpus;
}

namespace {

struct BenchCase {
	std::string name;
	std::string file;
	Verdict::Kind expected;
	unsigned max_iterations = 0;	/* 0: keep the configured cap */
	std::optional<bool> extrapolation;
};

const std::string &corpus_file(const std::string &name)
{
	for (const auto &[n, text] : paper_corpus())
		if (n == name)
			return text;
	throw Error(ErrorKind::Internal, "no corpus file " + name);
}

std::vector<BenchCase> paper_suite()
{
	using K = Verdict::Kind;
	return {
		{"eq2", "eq2", K::Valid, 20, {}},
		{"extrapolation-on", "extrapolation", K::Valid, 20, true},
		{"extrapolation-off", "extrapolation", K::Unknown, 50, false},
		{"incomplete-real", "incomplete-real", K::Unknown, 50, {}},
		{"incomplete-fixed", "incomplete-fixed", K::Invalid, 0, {}},
		{"bernstein-unit", "bernstein-unit", K::Valid, 0, {}},
		{"priority", "priority", K::Valid, 0, {}},
		{"priority-channel", "priority-channel", K::Valid, 0, {}},
		{"hybrid", "hybrid", K::Valid, 0, {}},
		{"bibo", "bibo", K::Valid, 0, {}},
		{"lyapunov-bernstein", "lyapunov-bernstein", K::Valid, 0, {}},
		{"lyapunov-bv", "lyapunov-bv", K::Valid, 0, {}},
		{"lyapunov-printed", "lyapunov-printed", K::Valid, 0, {}},
		{"pendulum", "pendulum", K::Unknown, 20, {}},
	};
}

} // namespace

std::vector<std::string> bench_suites()
{
	return {"paper"};
}

std::vector<BenchRow> run_bench(const std::string &suite, const EngineConfig &cfg)
{
	if (suite != "paper")
		throw Error(ErrorKind::Usage, "unknown suite '" + suite + "' (available: paper)");
	std::vector<BenchRow> rows;
	for (const BenchCase &c : paper_suite()) {
		BenchRow row{c.name, c.expected, {}, {}};
		EngineConfig local = cfg;
		if (c.max_iterations)
			local.max_iterations = c.max_iterations;
		if (c.extrapolation)
			local.extrapolation = *c.extrapolation;
		try {
			row.report = run(make_job(corpus_file(c.file)), local);
		} catch (const std::exception &e) {
			row.error = e.what();
		}
		rows.push_back(std::move(row));
	}
	return rows;
}

std::string render_bench(const std::vector<BenchRow> &rows)
{
	std::string out;
	char buf[256];
	std::snprintf(buf, sizeof buf, "%-20s %-9s %-9s %-13s %6s %9s  %s\n", "problem", "expected",
	              "verdict", "strategy", "iters", "time(s)", "status");
	out += buf;
	unsigned passed = 0;
	for (const BenchRow &r : rows) {
		passed += r.ok();
		std::snprintf(buf, sizeof buf, "%-20s %-9s %-9s %-13s %6u %9.3f  %s\n", r.name.c_str(),
		              verdict_name(r.expected),
		              r.error.empty() ? verdict_name(r.report.verdict) : "error",
		              strategy_name(r.report.strategy), r.report.stats.iterations,
		              r.report.seconds, r.ok() ? "ok" : "MISMATCH");
		out += buf;
		if (!r.error.empty())
			out += "  error: " + r.error + "\n";
	}
	out += std::to_string(passed) + "/" + std::to_string(rows.size()) + " as expected\n";
	return out;
}

} // namespace efsmt
