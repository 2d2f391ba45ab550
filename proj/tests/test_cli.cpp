/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "support.hpp"

#include "efsmt/efsmt.h"
#include "efsmt/frontend.hpp"
#include "efsmt/text.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

using namespace efsmt;
using namespace efsmt::test;

namespace {

const char *eq2_text = "(set-strategy la-la)\n"
                       "(declare-exists x real -30 30)\n"
                       "(declare-forall y real -30 30)\n"
                       "; (0 < y < 10) -> (y - 2x < 7)\n"
                       "(assume (< 0 y 10))\n"
                       "(guarantee (< (- y (* 2 x)) 7))\n";

std::string slurp(const std::filesystem::path &p)
{
	std::ifstream in(p);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

SourceLoc error_at(const std::string &text)
{
	try {
		parse_problem(text);
	} catch (const ParseError &e) {
		return e.loc;
	}
	ADD_FAILURE() << "no parse error for: " << text;
	return {0, 0};
}

std::string drop_time(std::string s)
{
	static const std::regex human("time: [0-9.]+s"), sexp("\\(time [0-9.]+\\)");
	return std::regex_replace(std::regex_replace(s, human, "time: T"), sexp, "(time T)");
}

struct CliRun {
	int code;
	std::string out;
};

CliRun cli(const std::string &args, const std::string &stdin_text = "")
{
	std::string cmd = std::string(EFSMT_CLI_PATH) + " " + args + " 2>&1";
	if (!stdin_text.empty()) {
		std::filesystem::path tmp = std::filesystem::temp_directory_path() / "efsmt_cli_stdin.efs";
		std::ofstream(tmp) << stdin_text;
		cmd = std::string(EFSMT_CLI_PATH) + " " + args + " < " + tmp.string() + " 2>&1";
	}
	FILE *f = popen(cmd.c_str(), "r");
	std::string out;
	char buf[4096];
	while (std::size_t n = std::fread(buf, 1, sizeof buf, f))
		out.append(buf, n);
	int status = pclose(f);
	return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string problem_path(const std::string &name)
{
	return std::string(EFSMT_SOURCE) + "/problems/" + name;
}

} // namespace

TEST(Parse, Eq2File)
{
	ProblemFile f = parse_problem(eq2_text);
	EFProblem p = f.problem();
	ASSERT_EQ(p.exists_vars.size(), 1u);
	ASSERT_EQ(p.forall_vars.size(), 1u);
	EXPECT_EQ(f.strategy, Strategy::LA_LA);
	Assignment a;
	a.set(0, 0);
	a.set(1, 9);
	EXPECT_FALSE(evaluate(p.matrix, a));
	a.set(0, 2);
	EXPECT_TRUE(evaluate(p.matrix, a));
	a.set(1, 20);
	a.set(0, -30);
	EXPECT_TRUE(evaluate(p.matrix, a));
}

TEST(Parse, EmptyFile)
{
	try {
		parse_problem("  ; nothing here\n");
		FAIL();
	} catch (const ParseError &e) {
		EXPECT_NE(std::string(e.what()).find("no declarations"), std::string::npos);
	}
}

TEST(Parse, ErrorsCarryPositions)
{
	SourceLoc l = error_at("(declare-exists x real 0 10)\n(declare-forall y interval 0 1)\n");
	EXPECT_EQ(l.line, 2);
	EXPECT_GT(l.column, 1);
	l = error_at("(declare-exists x real)\n");
	EXPECT_EQ(l.line, 1);
	l = error_at("(declare-exists x real 0 10)\n\n(constrain (> x))\n");
	EXPECT_EQ(l.line, 3);
	l = error_at("(declare-exists x real 0 10)\n(constrain (> z 1))\n");
	EXPECT_EQ(l.line, 2);
	l = error_at("(declare-exists x real 0 10)\n(constrain (> x 1)\n");
	EXPECT_GE(l.line, 1);
	try {
		parse_problem("(declare-exists x int)\n");
		FAIL();
	} catch (const ParseError &e) {
		EXPECT_NE(std::string(e.what()).find("unbounded numeric variable 'x'"), std::string::npos);
	}
}

TEST(Parse, PresetPriority)
{
	Job job = make_job("(preset priority-demo)\n");
	EXPECT_EQ(job.preset, "priority-demo");
	EXPECT_EQ(job.problem.forall_vars.size(), 4u);
	EXPECT_EQ(job.problem.exists_vars.size(), 33u);
	EXPECT_THROW(make_job("(preset priority-demo channel=sideways)\n"), ParseError);
	EXPECT_THROW(make_job("(preset no-such-thing)\n"), ParseError);
}

TEST(RoundTrip, ProblemsDirectory)
{
	unsigned files = 0;
	for (const auto &entry : std::filesystem::directory_iterator(std::string(EFSMT_SOURCE) + "/problems")) {
		if (entry.path().extension() != ".efs")
			continue;
		++files;
		ProblemFile f = parse_problem(slurp(entry.path()));
		std::string once = print_problem(f);
		ProblemFile g = parse_problem(once);
		EXPECT_EQ(g, f) << entry.path();
		EXPECT_EQ(print_problem(g), once) << entry.path();
	}
	EXPECT_GE(files, 14u);
	for (const auto &[name, text] : paper_corpus()) {
		ProblemFile f = parse_problem(text);
		EXPECT_EQ(parse_problem(print_problem(f)), f) << name;
	}
}

TEST(RoundTrip, RandomProblems)
{
	Rng rng(81);
	for (int i = 0; i < 300; ++i) {
		EFProblem p;
		p.declare_exists("x", make_real_sort(rational(rng, -5, 0, 3), rational(rng, 1, 5, 2)));
		p.declare_exists("flag", BoolSort{});
		p.declare_forall("y", make_int_sort(-3, 3));
		p.declare_forall("w", make_fixed_sort(0, 1, Rational(1, 8)));
		p.declare_forall("and", make_real_sort(-1, 1));	/* a reserved word as a name */
		p.matrix = random_formula(rng, p.all_vars(), 4, 3);
		ProblemFile f = problem_file(p);
		std::string text = print_problem(f);
		ProblemFile g = parse_problem(text);
		ASSERT_EQ(print_problem(g), text);
		EFProblem q = g.problem();
		ASSERT_EQ(q.all_vars(), p.all_vars());
		for (int k = 0; k < 10; ++k) {
			Assignment a = random_point(rng, p.all_vars());
			ASSERT_EQ(evaluate(q.matrix, a), evaluate(p.matrix, a)) << text;
		}
	}
}

TEST(Report, DeterministicModuloTime)
{
	EngineConfig cfg;
	cfg.trace = true;
	Job job = make_job(eq2_text);
	RunReport a = run(job, cfg), b = run(job, cfg);
	EXPECT_EQ(drop_time(render_human(a)), drop_time(render_human(b)));
	EXPECT_EQ(drop_time(render_sexp(a)), drop_time(render_sexp(b)));
	std::string s = render_sexp(a);
	EXPECT_EQ(s.rfind("(report (verdict valid)", 0), 0u) << s;
	EXPECT_NE(s.find("(trace"), std::string::npos);
	/* both forms carry the witness */
	EXPECT_NE(render_human(a).find("x = "), std::string::npos);
	EXPECT_NE(s.find("(witness (x "), std::string::npos);
}

TEST(CApi, ParseSolveRender)
{
	efsmt_problem *p = nullptr;
	ASSERT_EQ(efsmt_problem_parse(eq2_text, nullptr, &p), EFSMT_OK);
	EXPECT_EQ(efsmt_problem_exists_count(p), 1u);
	EXPECT_EQ(efsmt_problem_forall_count(p), 1u);
	efsmt_config cfg;
	efsmt_config_init(&cfg);
	efsmt_report *r = nullptr;
	ASSERT_EQ(efsmt_solve(p, &cfg, &r), EFSMT_OK);
	EXPECT_EQ(efsmt_report_verdict(r), EFSMT_VALID);
	ASSERT_EQ(efsmt_report_witness_size(r), 1u);
	EXPECT_STREQ(efsmt_report_witness_name(r, 0), "x");
	EXPECT_GE(parse_rational(efsmt_report_witness_value(r, 0)), Rational(3, 2));
	EXPECT_EQ(efsmt_report_witness_name(r, 1), nullptr);
	char *text = nullptr;
	ASSERT_EQ(efsmt_report_render(r, 1, &text), EFSMT_OK);
	EXPECT_EQ(std::string(text).rfind("(report", 0), 0u);
	efsmt_string_free(text);
	efsmt_report_free(r);

	ASSERT_EQ(efsmt_problem_print(p, &text), EFSMT_OK);
	EXPECT_EQ(std::string(text), print_problem(parse_problem(eq2_text)));
	efsmt_string_free(text);
	efsmt_problem_free(p);
}

TEST(CApi, ErrorsAndStatuses)
{
	efsmt_problem *p = nullptr;
	EXPECT_EQ(efsmt_problem_parse("(declare-exists x real 0 10)\n(bogus)\n", nullptr, &p), EFSMT_ERR_PARSE);
	EXPECT_EQ(p, nullptr);
	EXPECT_EQ(efsmt_last_error_line(), 2);
	EXPECT_GT(std::string(efsmt_last_error()).size(), 0u);
	EXPECT_EQ(efsmt_problem_parse(nullptr, nullptr, &p), EFSMT_ERR_USAGE);

	ASSERT_EQ(efsmt_problem_parse("(declare-exists a real 0 1)\n(declare-exists b real 0 1)\n"
	                              "(declare-forall y real 0 1)\n(constrain (<= (* a b y) 1))\n",
	                              nullptr, &p),
	          EFSMT_OK);
	efsmt_config cfg;
	efsmt_config_init(&cfg);
	cfg.strategy = "la-la";
	efsmt_report *r = nullptr;
	EXPECT_EQ(efsmt_solve(p, &cfg, &r), EFSMT_ERR_CONFIG);
	cfg.strategy = "sideways";
	EXPECT_EQ(efsmt_solve(p, &cfg, &r), EFSMT_ERR_USAGE);
	efsmt_problem_free(p);

	char *list = nullptr;
	ASSERT_EQ(efsmt_presets(&list), EFSMT_OK);
	EXPECT_NE(std::string(list).find("lyapunov"), std::string::npos);
	efsmt_string_free(list);
}

TEST(Cli, ExitCodes)
{
	CliRun r = cli("solve " + problem_path("eq2.efs") + " --strategy la-la");
	EXPECT_EQ(r.code, 0) << r.out;
	EXPECT_NE(r.out.find("verdict: valid"), std::string::npos) << r.out;

	r = cli("solve " + problem_path("incomplete-real.efs") + " --max-iters 50");
	EXPECT_EQ(r.code, 2) << r.out;
	r = cli("solve " + problem_path("incomplete-fixed.efs"));
	EXPECT_EQ(r.code, 1) << r.out;

	r = cli("solve - --sexp", eq2_text);
	EXPECT_EQ(r.code, 0) << r.out;
	EXPECT_EQ(r.out.rfind("(report (verdict valid)", 0), 0u) << r.out;

	r = cli("solve", "");
	EXPECT_EQ(r.code, 64) << r.out;
	r = cli("solve " + problem_path("eq2.efs") + " --strategy sideways");
	EXPECT_EQ(r.code, 64) << r.out;
	r = cli("solve /nonexistent/file.efs");
	EXPECT_EQ(r.code, 66) << r.out;
	r = cli("solve -", "(declare-exists x real 0 10)\n(constrain (> x 1 2 3 +))\n");
	EXPECT_EQ(r.code, 65) << r.out;
	EXPECT_NE(r.out.find("-:2:"), std::string::npos) << r.out;
	r = cli("solve - --strategy la-la",
	        "(declare-exists a real 0 1)\n(declare-exists b real 0 1)\n"
	        "(declare-forall y real 0 1)\n(constrain (<= (* a b y) 1))\n");
	EXPECT_EQ(r.code, 78) << r.out;

	r = cli("print " + problem_path("eq2.efs"));
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, print_problem(parse_problem(slurp(problem_path("eq2.efs")))));
	r = cli("presets");
	EXPECT_EQ(r.code, 0);
	EXPECT_NE(r.out.find("priority-demo"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic)
{
	CliRun a = cli("solve " + problem_path("extrapolation.efs") + " --trace --sexp");
	CliRun b = cli("solve " + problem_path("extrapolation.efs") + " --trace --sexp");
	EXPECT_EQ(a.code, 0);
	EXPECT_EQ(drop_time(a.out), drop_time(b.out));
}
