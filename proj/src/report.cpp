// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "confsym/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace confsym {

std::string status_name(TaskStatus s) {
    switch (s) {
        case TaskStatus::Verified: return "verified";
        case TaskStatus::ResidualNonzero: return "residual_nonzero";
        case TaskStatus::Experimental: return "experimental";
        case TaskStatus::Error: return "error";
    }
    return "error";
}

bool Report::ok() const {
    return std::none_of(tasks.begin(), tasks.end(), [](const TaskResult& t) {
        return t.status == TaskStatus::ResidualNonzero || t.status == TaskStatus::Error;
    });
}

std::string emit_report_text(const Report& r) {
    size_t idw = 4, stw = 8;
    for (const auto& t : r.tasks) {
        idw = std::max(idw, t.id.size());
        stw = std::max(stw, status_name(t.status).size());
    }
    std::ostringstream os;
    for (const auto& t : r.tasks) {
        os << t.id << std::string(idw - t.id.size() + 2, ' ');
        std::string st = status_name(t.status);
        os << st << std::string(stw - st.size() + 2, ' ');
        if (t.residual_order >= 0) os << "order=" << t.residual_order << "  ";
        os << "seed=" << t.seed << "  " << t.ms << "ms";
        if (!t.summary.empty()) os << "  " << t.summary;
        os << "\n";
    }
    os << (r.ok() ? "OK" : "FAILED") << " (" << r.tasks.size() << " tasks)\n";
    return os.str();
}

std::string emit_report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["tasks"] = nlohmann::ordered_json::array();
    for (const auto& t : r.tasks) {
        nlohmann::ordered_json e;
        e["id"] = t.id;
        e["status"] = status_name(t.status);
        e["residual_order"] = t.residual_order;
        e["seed"] = t.seed;
        e["ms"] = t.ms;
        if (!t.summary.empty()) e["summary"] = t.summary;
        j["tasks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

}  // namespace confsym
