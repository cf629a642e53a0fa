// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_TASKFILE_HPP
#define CONFSYM_TASKFILE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "confsym/poly.hpp"
#include "confsym/report.hpp"

namespace confsym {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
          line(l),
          col(c) {}
};

/// Infix polynomial expressions over x1..xn with rational literals p/q,
/// operators + - * ^, parentheses and '#' comments.
Poly parse_polynomial(const std::string& text, int n);

struct FieldDecl {
    std::string name;
    int valence = 1;
    Rational weight;
    std::vector<Poly> entries;  // n components, or n(n+1)/2 upper-triangle entries
};

struct DensityDecl {
    std::string name;
    Rational weight;
    Poly value;
};

struct MetricDecl {
    std::string name;
    std::vector<Poly> entries;  // n(n+1)/2 upper-triangle entries
};

struct ConformalDecl {
    std::string name;
    Poly value;  // must equal 1 at the origin
};

struct TaskDecl {
    std::string verb;
    std::vector<std::string> names;               // positional field references
    std::vector<std::pair<std::string, std::string>> args;  // key=value, in file order
    int line = 0;

    std::string arg(const std::string& key, const std::string& fallback = "") const;
    bool has_arg(const std::string& key) const;
};

struct TaskFile {
    int dimension = 3;
    int order = 6;
    std::uint64_t seed = 0;
    std::vector<FieldDecl> fields;
    std::vector<DensityDecl> densities;
    std::vector<MetricDecl> metrics;
    std::vector<ConformalDecl> conformals;
    std::vector<std::string> decl_order;  // declaration names in file order
    std::vector<TaskDecl> tasks;
};

/// Line-oriented directives: dimension, order, seed, field, density, metric,
/// conformal, task. Validates that every task references declared names and
/// that conformal factors equal 1 at the origin.
TaskFile parse_taskfile(const std::string& text);

/// Canonical printer; parse_taskfile(print_taskfile(tf)) reproduces tf.
std::string print_taskfile(const TaskFile& tf);

/// Executes the tasks in file order. Per-task failures become error entries
/// and never abort sibling tasks.
Report run_tasks(const TaskFile& tf);

}  // namespace confsym

#endif
