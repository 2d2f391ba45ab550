/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include <stdexcept>
#include <string>

namespace efsmt {

enum class ErrorKind {
	Usage,		/* API misuse, e.g. pop on an empty stack */
	Parse,
	Config,		/* strategy does not fit the problem */
	Unsupported,	/* sort or atom a backend cannot handle */
	Encoding,
	Degenerate,	/* zero pivot, too-small degree vector, ... */
	Internal,
};

struct Error : std::runtime_error {
	ErrorKind kind;
	Error(ErrorKind kind, const std::string &what)
	: std::runtime_error(what), kind(kind) {}
};

const char *error_kind_name(ErrorKind k);

} // namespace efsmt
