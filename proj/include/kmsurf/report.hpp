#pragma once

#include <map>
#include <string>
#include <vector>

namespace kmsurf {

/* One verified relation (or one named scalar check). */
struct RelationRecord {
    std::string id;     /* e.g. "[E(1),E(-1)] m=1 n=-1" */
    std::string family; /* HH, HE, EE, LH, LE, LL, adjoint, central, jacobi, ... */
    double residual = 0.0;
    double tol = 0.0;
    bool pass = true;
    std::map<std::string, double> values; /* named scalars: measured/expected parts */
};

struct Report {
    std::string title;
    std::map<std::string, std::string> meta;
    std::vector<RelationRecord> records;

    bool all_pass() const;
    double worst_residual() const;
    const RelationRecord* worst() const;
};

/* All renderers print numeric values to 12 significant digits. */
std::string render_json(const Report& r);
std::string render_csv(const Report& r);
std::string render_table(const Report& r);
Report parse_report_json(const std::string& text);

}  // namespace kmsurf
