/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/engine.hpp"
#include "efsmt/text.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace efsmt {

/* A problem ready to solve, with the settings its source asks for. */
struct Job {
	EFProblem problem;
	std::optional<Strategy> strategy;
	bool projection = false;
	std::string preset;
	/* Domain reading of a verdict, one line each (decoded priorities,
	 * simulation result, ...). */
	std::function<std::vector<std::string>(const Verdict &)> describe;
};

/* Expands presets. 'step' is the default grid for presets that take one.
 * Bad preset names and arguments throw ParseError at the preset. */
Job make_job(const ProblemFile &f, const std::optional<Rational> &step = std::nullopt);
Job make_job(std::string_view text, const std::optional<Rational> &step = std::nullopt);

/* name, one-line argument summary */
const std::vector<std::pair<std::string, std::string>> &preset_list();

using Binding = std::pair<std::string, Value>;

struct RunReport {
	Verdict::Kind verdict = Verdict::Kind::Unknown;
	std::string reason;
	Strategy strategy = Strategy::AUTO;
	std::string preset;
	std::vector<Binding> witness;
	bool verified = false;		/* verify_witness ran and held */
	bool verification_inconclusive = false;
	EngineStats stats;
	bool traced = false;
	std::vector<std::vector<Binding>> counterexamples;
	std::vector<std::string> notes;
	double seconds = 0;
};

/* Job settings override cfg unless cfg forces them (a non-AUTO strategy). */
RunReport run(const Job &job, EngineConfig cfg);

std::string render_human(const RunReport &r);
/* One s-expression on one line. */
std::string render_sexp(const RunReport &r);

struct BenchRow {
	std::string name;
	Verdict::Kind expected;
	RunReport report;
	std::string error;	/* non-empty when the run threw */

	bool ok() const { return error.empty() && report.verdict == expected; }
};

std::vector<std::string> bench_suites();	/* "paper" */
/* Throws Error(Usage) for an unknown suite. */
std::vector<BenchRow> run_bench(const std::string &suite, const EngineConfig &cfg);
std::string render_bench(const std::vector<BenchRow> &rows);

/* The problem files of the paper suite, by name. */
const std::vector<std::pair<std::string, std::string>> &paper_corpus();

} // namespace efsmt
