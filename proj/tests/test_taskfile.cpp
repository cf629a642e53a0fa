// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "confsym/taskfile.hpp"

using namespace confsym;

namespace {

Poly var(int n, int i) { return Poly::variable(n, i); }

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::stringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

std::string strip_timing(std::string json) {
    return std::regex_replace(json, std::regex("\"ms\": \\d+"), "\"ms\": 0");
}

}  // namespace

TEST_CASE("polynomial parsing") {
    const int n = 3;
    Poly p = parse_polynomial("x1^2 - 2/3*x2*x3", n);
    Poly expect = var(n, 1) * var(n, 1) - Rational(2, 3) * (var(n, 2) * var(n, 3));
    CHECK(p == expect);

    CHECK(parse_polynomial("(x1+x2)^2", n) ==
          var(n, 1) * var(n, 1) + Rational(2) * (var(n, 1) * var(n, 2)) + var(n, 2) * var(n, 2));

    CHECK(parse_polynomial("5", n) == Poly::constant(n, Rational(5)));
    CHECK(parse_polynomial("-x1 + x1", n).is_zero());
    CHECK(parse_polynomial("x1 # trailing comment", n) == var(n, 1));

    try {
        parse_polynomial("x0", n);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.col == 1);
    }
    CHECK_THROWS_AS(parse_polynomial("x4", n), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(x1+x2", n), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/", n), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1 x2", n), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/0", n), ParseError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_polynomial("x1 +\n x9", 3);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 2);
    }
}

TEST_CASE("minimal task file gets defaults") {
    TaskFile tf = parse_taskfile("dimension 3\ntask suite-all\n");
    CHECK(tf.dimension == 3);
    CHECK(tf.order == 6);
    CHECK(tf.seed == 0);
    REQUIRE(tf.tasks.size() == 1);
    CHECK(tf.tasks[0].verb == "suite-all");
}

TEST_CASE("field declaration and symmetry task") {
    std::string text =
        "dimension 3\n"
        "field V = (x1^2 - x2^2 - x3^2, 2*x1*x2, 2*x1*x3)\n"
        "task verify-symmetry-first V w=-1/2\n";
    TaskFile tf = parse_taskfile(text);
    REQUIRE(tf.fields.size() == 1);
    CHECK(tf.fields[0].valence == 1);
    REQUIRE(tf.tasks.size() == 1);
    CHECK(tf.tasks[0].names == std::vector<std::string>{"V"});
    CHECK(tf.tasks[0].arg("w") == "-1/2");
}

TEST_CASE("taskfile validation errors") {
    CHECK_THROWS_AS(parse_taskfile("dimension 3\nconformal Om = 2 + x1\n"), ParseError);
    CHECK_THROWS_AS(parse_taskfile("dimension 3\ntask verify-symmetry-first W\n"), ParseError);
    CHECK_THROWS_AS(parse_taskfile("dimension 3\nmetric g weight 2 = (1, 0, 0, 1, 0, 1)\n"), ParseError);
    CHECK_THROWS_AS(parse_taskfile("dimension 3\nbogus 4\n"), ParseError);
    CHECK_THROWS_AS(parse_taskfile("dimension 3\nfield V = (x1, x2)\n"), ParseError);
    // valence-2 fields must be trace-free
    CHECK_THROWS_AS(parse_taskfile("dimension 3\nfield Q valence 2 = (x1, 0, 0, 0, 0, 0)\n"), ParseError);
    // duplicate names are rejected
    CHECK_THROWS_AS(parse_taskfile("dimension 3\nfield V = (1,0,0)\nfield V = (0,1,0)\n"), ParseError);
}

TEST_CASE("printer round-trip is a fixpoint on the bundled task files") {
    for (const std::string name : {"symmetries.task", "suite3.task", "pairings.task"}) {
        std::string text = read_file(std::string(TASKFILE_DIR) + "/" + name);
        TaskFile tf = parse_taskfile(text);
        std::string printed = print_taskfile(tf);
        TaskFile reparsed = parse_taskfile(printed);
        CHECK(print_taskfile(reparsed) == printed);
    }
}

TEST_CASE("task runner verifies declared symmetries") {
    std::string text =
        "dimension 3\n"
        "field V = (x1^2 - x2^2 - x3^2, 2*x1*x2, 2*x1*x3)\n"
        "field B = (x1^2, 0, 0)\n"
        "task verify-symmetry-first V w=-1/2\n"
        "task verify-symmetry-first B w=-1/2\n";
    Report rep = run_tasks(parse_taskfile(text));
    REQUIRE(rep.tasks.size() == 2);
    CHECK(rep.tasks[0].status == TaskStatus::Verified);
    CHECK(rep.tasks[1].status == TaskStatus::ResidualNonzero);  // x1^2 d1 is not a symmetry
    CHECK(!rep.ok());
}

TEST_CASE("task runner executes pairing and solver tasks") {
    std::string text =
        "dimension 3\n"
        "order 5\n"
        "seed 3\n"
        "task verify-pairing first v=1/2 w=-3/2\n"
        "task solve-ckt valence=1 max-degree=2\n";
    Report rep = run_tasks(parse_taskfile(text));
    REQUIRE(rep.tasks.size() == 2);
    CHECK(rep.tasks[0].status == TaskStatus::Verified);
    CHECK(rep.tasks[1].status == TaskStatus::Verified);
    CHECK(rep.tasks[1].summary == "count=10 expected=10");
    CHECK(rep.ok());
}

TEST_CASE("task errors do not abort sibling tasks") {
    std::string text =
        "dimension 3\n"
        "field V = (x1, x2, x3)\n"
        "task verify-symmetry-second V\n"  // wrong valence: error entry
        "task solve-ckt valence=1 max-degree=2\n";
    Report rep = run_tasks(parse_taskfile(text));
    REQUIRE(rep.tasks.size() == 2);
    CHECK(rep.tasks[0].status == TaskStatus::Error);
    CHECK(rep.tasks[1].status == TaskStatus::Verified);
}

TEST_CASE("json report emission") {
    Report empty;
    CHECK(emit_report_json(empty) == "{\n  \"version\": 1,\n  \"tasks\": []\n}\n");

    Report one;
    TaskResult t;
    t.id = "1:solve-ckt";
    t.status = TaskStatus::Verified;
    t.residual_order = 4;
    t.seed = 7;
    t.ms = 12;
    one.tasks.push_back(t);
    std::string json = emit_report_json(one);
    CHECK(json.find("\"status\": \"verified\"") != std::string::npos);
    CHECK(json.find("\"residual_order\": 4") != std::string::npos);
    CHECK(one.ok());

    one.tasks[0].status = TaskStatus::Experimental;
    CHECK(one.ok());
    one.tasks[0].status = TaskStatus::ResidualNonzero;
    CHECK(!one.ok());
}

TEST_CASE("reports are deterministic modulo timing") {
    std::string text =
        "dimension 3\n"
        "order 5\n"
        "seed 9\n"
        "task verify-pairing second v=0 w=-1/2\n"
        "task solve-ckt valence=1 max-degree=2\n";
    TaskFile tf = parse_taskfile(text);
    std::string a = strip_timing(emit_report_json(run_tasks(tf)));
    std::string b = strip_timing(emit_report_json(run_tasks(tf)));
    CHECK(a == b);
}
