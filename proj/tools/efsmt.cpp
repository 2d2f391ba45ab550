/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/efsmt.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace {

enum Exit {
	EXIT_VALID = 0,
	EXIT_INVALID = 1,
	EXIT_UNKNOWN = 2,
	EXIT_USAGE = 64,
	EXIT_DATA = 65,
	EXIT_NOINPUT = 66,
	EXIT_SOFTWARE = 70,
	EXIT_CONFIG = 78,
};

int exit_code(efsmt_status s)
{
	switch (s) {
	case EFSMT_OK: return EXIT_VALID;
	case EFSMT_ERR_USAGE: return EXIT_USAGE;
	case EFSMT_ERR_PARSE:
	case EFSMT_ERR_ENCODING:
	case EFSMT_ERR_DEGENERATE: return EXIT_DATA;
	case EFSMT_ERR_CONFIG:
	case EFSMT_ERR_UNSUPPORTED: return EXIT_CONFIG;
	case EFSMT_ERR_INTERNAL: return EXIT_SOFTWARE;
	}
	return EXIT_SOFTWARE;
}

int report_error(efsmt_status s, const std::string &file)
{
	std::string where = file;
	if (s == EFSMT_ERR_PARSE && efsmt_last_error_line() > 0)
		std::cerr << "efsmt: " << file << ":" << efsmt_last_error() << "\n";
	else
		std::cerr << "efsmt: " << (where.empty() ? "" : where + ": ") << efsmt_last_error()
		          << "\n";
	return exit_code(s);
}

std::optional<std::string> slurp(const std::string &path)
{
	if (path == "-")
		return std::string(std::istreambuf_iterator<char>(std::cin), {});
	std::ifstream in(path, std::ios::binary);
	if (!in)
		return std::nullopt;
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

struct Options {
	std::string file;
	std::string strategy = "auto";
	std::string step;
	unsigned max_iters = 0;
	std::string extrapolate = "on";
	unsigned depth = 0;
	std::string backend = "internal";
	bool trace = false;
	std::string verify = "on";
	unsigned long seed = 0;
	bool sexp = false;
	bool project = false;
	bool expanded = false;
	std::string suite = "paper";
};

efsmt_config make_config(const Options &o)
{
	efsmt_config c;
	efsmt_config_init(&c);
	c.strategy = o.strategy.c_str();
	c.step = o.step.empty() ? nullptr : o.step.c_str();
	if (o.max_iters)
		c.max_iterations = o.max_iters;
	c.extrapolate = o.extrapolate == "on";
	if (o.depth)
		c.depth = o.depth;
	c.backend = o.backend.c_str();
	c.trace = o.trace;
	c.verify = o.verify == "on";
	c.projection = o.project;
	c.seed = o.seed;
	return c;
}

void engine_flags(CLI::App *cmd, Options &o)
{
	cmd->add_option("--strategy", o.strategy, "la-la, la-bernstein, fixed-fixed or auto")
		->check(CLI::IsMember({"la-la", "la-bernstein", "fixed-fixed", "auto"}));
	cmd->add_option("--step", o.step, "grid step (1 bit) for fixed-point discretization");
	cmd->add_option("--max-iters", o.max_iters, "CEGIS iteration cap");
	cmd->add_option("--extrapolate", o.extrapolate, "on|off")->check(CLI::IsMember({"on", "off"}));
	cmd->add_option("--depth", o.depth, "Bernstein subdivision depth");
	cmd->add_option("--backend", o.backend, "internal or external:<command>");
	cmd->add_flag("--trace", o.trace, "list every counterexample");
	cmd->add_option("--verify", o.verify, "on|off")->check(CLI::IsMember({"on", "off"}));
	cmd->add_option("--seed", o.seed, "reserved; the internal backends are deterministic");
	cmd->add_flag("--project", o.project, "learn projected counterexample regions");
}

efsmt_problem *load(const Options &o, int &code)
{
	auto text = slurp(o.file);
	if (!text) {
		std::cerr << "efsmt: cannot read " << o.file << "\n";
		code = EXIT_NOINPUT;
		return nullptr;
	}
	efsmt_problem *p = nullptr;
	efsmt_status s = efsmt_problem_parse(text->c_str(), o.step.empty() ? nullptr : o.step.c_str(), &p);
	if (s != EFSMT_OK) {
		code = report_error(s, o.file);
		return nullptr;
	}
	return p;
}

int cmd_solve(const Options &o)
{
	int code = 0;
	efsmt_problem *p = load(o, code);
	if (!p)
		return code;
	efsmt_config cfg = make_config(o);
	efsmt_report *r = nullptr;
	efsmt_status s = efsmt_solve(p, &cfg, &r);
	efsmt_problem_free(p);
	if (s != EFSMT_OK)
		return report_error(s, o.file);
	char *text = nullptr;
	s = efsmt_report_render(r, o.sexp, &text);
	if (s != EFSMT_OK) {
		efsmt_report_free(r);
		return report_error(s, o.file);
	}
	std::fputs(text, stdout);
	efsmt_string_free(text);
	switch (efsmt_report_verdict(r)) {
	case EFSMT_VALID: code = EXIT_VALID; break;
	case EFSMT_INVALID: code = EXIT_INVALID; break;
	case EFSMT_UNKNOWN: code = EXIT_UNKNOWN; break;
	}
	efsmt_report_free(r);
	return code;
}

int cmd_print(const Options &o)
{
	int code = 0;
	efsmt_problem *p = load(o, code);
	if (!p)
		return code;
	char *text = nullptr;
	efsmt_status s = o.expanded ? efsmt_problem_print_expanded(p, &text)
	                            : efsmt_problem_print(p, &text);
	efsmt_problem_free(p);
	if (s != EFSMT_OK)
		return report_error(s, o.file);
	std::fputs(text, stdout);
	efsmt_string_free(text);
	return 0;
}

int cmd_bench(const Options &o)
{
	efsmt_config cfg = make_config(o);
	char *text = nullptr;
	int ok = 0;
	efsmt_status s = efsmt_bench(o.suite.c_str(), &cfg, &text, &ok);
	if (s != EFSMT_OK)
		return report_error(s, "");
	std::fputs(text, stdout);
	efsmt_string_free(text);
	return ok ? 0 : 1;
}

int cmd_presets()
{
	char *text = nullptr;
	efsmt_status s = efsmt_presets(&text);
	if (s != EFSMT_OK)
		return report_error(s, "");
	std::fputs(text, stdout);
	efsmt_string_free(text);
	return 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"efsmt: exists-forall constraint solver"};
	app.set_version_flag("--version", std::string(efsmt_version()));
	app.require_subcommand(1);
	Options o;

	CLI::App *solve = app.add_subcommand("solve", "solve a problem file ('-' reads stdin)");
	solve->add_option("file", o.file, "problem file")->required();
	engine_flags(solve, o);
	solve->add_flag("--sexp", o.sexp, "print the report as one s-expression");

	CLI::App *print = app.add_subcommand("print", "print a problem file in canonical form");
	print->add_option("file", o.file, "problem file")->required();
	print->add_option("--step", o.step, "default grid step of presets");
	print->add_flag("--expanded", o.expanded, "print the expanded problem of a preset");

	CLI::App *bench = app.add_subcommand("bench", "run a benchmark suite");
	bench->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember({"paper"}));
	engine_flags(bench, o);

	app.add_subcommand("presets", "list the encoder presets");

	try {
		app.parse(argc, argv);
	} catch (const CLI::Success &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return EXIT_USAGE;
	}
	if (solve->parsed())
		return cmd_solve(o);
	if (print->parsed())
		return cmd_print(o);
	if (bench->parsed())
		return cmd_bench(o);
	return cmd_presets();
}
