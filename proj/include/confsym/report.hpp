// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#ifndef CONFSYM_REPORT_HPP
#define CONFSYM_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace confsym {

enum class TaskStatus { Verified, ResidualNonzero, Experimental, Error };

std::string status_name(TaskStatus s);

struct TaskResult {
    std::string id;
    TaskStatus status = TaskStatus::Error;
    std::string summary;
    int residual_order = -1;  // jet order of the comparison, -1 for exact polynomial checks
    std::uint64_t seed = 0;
    long ms = 0;
};

struct Report {
    std::vector<TaskResult> tasks;

    bool ok() const;  // no residual_nonzero or error entries; experimental passes
};

/// Human-readable aligned table.
std::string emit_report_text(const Report& r);

/// Stable schema: {"version":1,"tasks":[{id,status,residual_order,seed,ms}]}.
/// Every rational in summaries is rendered as "p/q"; no floats anywhere.
std::string emit_report_json(const Report& r);

}  // namespace confsym

#endif
