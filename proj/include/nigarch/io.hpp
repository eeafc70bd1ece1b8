#pragma once

#include "nigarch/estimation.hpp"
#include "nigarch/garch.hpp"
#include "nigarch/schemes.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace nigarch {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// Header k,sigma_sq,y,eps then one row per k; LF line endings. Open paths
/// leave the y and eps cells of the last row empty.
void write_path_csv(std::ostream& out, const Path& path);
Path read_path_csv(std::istream& in);

/// Columns n,alpha,beta,gamma.
void write_fit_table_csv(std::ostream& out, const std::vector<WindowFit>& rows);
nlohmann::ordered_json fit_table_to_json(const std::vector<WindowFit>& rows);
std::vector<WindowFit> fit_table_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json fit_to_json(const QmleFit& fit, std::size_t n);
QmleFit fit_from_json(const nlohmann::ordered_json& j);

AssumptionReport assumption_report_from_json(const nlohmann::ordered_json& j);

}  // namespace nigarch
