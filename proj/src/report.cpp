#include "kmsurf/report.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "json.hpp"

namespace kmsurf {

namespace {
double sig12(double v) { return std::stod(fmt::format("{:.12g}", v)); }
}  // namespace

bool Report::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

double Report::worst_residual() const {
    double w = 0.0;
    for (const auto& r : records) w = std::max(w, r.residual);
    return w;
}

const RelationRecord* Report::worst() const {
    const RelationRecord* w = nullptr;
    for (const auto& r : records)
        if (!w || r.residual > w->residual) w = &r;
    return w;
}

std::string render_json(const Report& rep) {
    nlohmann::json j;
    j["title"] = rep.title;
    j["meta"] = rep.meta;
    j["all_pass"] = rep.all_pass();
    j["worst_residual"] = sig12(rep.worst_residual());
    j["records"] = nlohmann::json::array();
    for (const auto& r : rep.records) {
        nlohmann::json e;
        e["id"] = r.id;
        e["family"] = r.family;
        e["residual"] = sig12(r.residual);
        e["tol"] = sig12(r.tol);
        e["pass"] = r.pass;
        for (const auto& [k, v] : r.values) e["values"][k] = sig12(v);
        j["records"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string render_csv(const Report& rep) {
    std::string out = "id,family,residual,tol,pass,values\n";
    for (const auto& r : rep.records) {
        std::string vals;
        for (const auto& [k, v] : r.values)
            vals += fmt::format("{}{}={:.12g}", vals.empty() ? "" : ";", k, v);
        out += fmt::format("\"{}\",{},{:.12g},{:.12g},{},\"{}\"\n", r.id, r.family, r.residual,
                           r.tol, r.pass ? 1 : 0, vals);
    }
    return out;
}

std::string render_table(const Report& rep) {
    std::string out = fmt::format("== {} ==\n", rep.title);
    for (const auto& [k, v] : rep.meta) out += fmt::format("   {}: {}\n", k, v);
    out += fmt::format("{:<44} {:<10} {:>14} {:>10}  {}\n", "relation", "family", "residual",
                       "tol", "status");
    for (const auto& r : rep.records) {
        out += fmt::format("{:<44} {:<10} {:>14.6e} {:>10.1e}  {}\n", r.id, r.family, r.residual,
                           r.tol, r.pass ? "ok" : "FAIL");
        for (const auto& [k, v] : r.values) out += fmt::format("    {} = {:.12g}\n", k, v);
    }
    out += fmt::format("summary: {}/{} pass, worst residual {:.12g}\n",
                       std::count_if(rep.records.begin(), rep.records.end(),
                                     [](const auto& r) { return r.pass; }),
                       rep.records.size(), rep.worst_residual());
    return out;
}

Report parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Report rep;
    rep.title = j.value("title", "");
    if (j.contains("meta"))
        for (const auto& [k, v] : j["meta"].items()) rep.meta[k] = v.get<std::string>();
    for (const auto& e : j.value("records", nlohmann::json::array())) {
        RelationRecord r;
        r.id = e.value("id", "");
        r.family = e.value("family", "");
        r.residual = e.value("residual", 0.0);
        r.tol = e.value("tol", 0.0);
        r.pass = e.value("pass", false);
        if (e.contains("values"))
            for (const auto& [k, v] : e["values"].items()) r.values[k] = v.get<double>();
        rep.records.push_back(std::move(r));
    }
    return rep;
}

}  // namespace kmsurf
