#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfmom/moments.hpp"

namespace lfmom {

/// One sweep entry: a computed row, or a skip record carrying the reason.
struct RowRecord {
    MomentRow row;
    std::string status = "ok"; // "ok" or "skip: <reason>"
    bool ok() const { return status == "ok"; }
};

namespace report {

/// 17 significant digits: round-trip exact for doubles.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_header() {
    return "status,q,k,r,s,x,X,method,M2k,S1_re,S1_im,S2,S2_diag,S1_main,S1_off,"
           "S1_diag_lower,holder_bound,ratio_moment,ratio_bound,resid_s2,resid_s1_imag,"
           "t_lvalues,t_resonator,t_row";
}

inline std::string csv_line(const RowRecord& rec) {
    const MomentRow& r = rec.row;
    std::string s;
    s += rec.status + ",";
    s += std::to_string(r.q) + ",";
    s += r.k.str() + ",";
    s += std::to_string(r.k.r()) + "," + std::to_string(r.k.s()) + ",";
    s += std::to_string(r.x) + "," + std::to_string(r.X) + ",";
    s += r.method + ",";
    s += fmt(r.M2k) + "," + fmt(r.S1.real()) + "," + fmt(r.S1.imag()) + ",";
    s += fmt(r.S2) + "," + fmt(r.S2_diag) + "," + fmt(r.S1_main) + "," + fmt(r.S1_off) + ",";
    s += fmt(r.S1_diag_lower) + "," + fmt(r.holder_bound) + ",";
    s += fmt(r.ratio_moment) + "," + fmt(r.ratio_bound) + ",";
    s += fmt(r.resid_s2) + "," + fmt(r.resid_s1_imag) + ",";
    s += fmt(r.t_lvalues) + "," + fmt(r.t_resonator) + "," + fmt(r.t_row);
    return s;
}

inline nlohmann::json json_row(const RowRecord& rec) {
    const MomentRow& r = rec.row;
    nlohmann::json j;
    j["status"] = rec.status;
    j["q"] = r.q;
    j["k"] = r.k.str();
    j["r"] = r.k.r();
    j["s"] = r.k.s();
    j["x"] = r.x;
    j["X"] = r.X;
    j["method"] = r.method;
    j["M2k"] = r.M2k;
    j["S1_re"] = r.S1.real();
    j["S1_im"] = r.S1.imag();
    j["S2"] = r.S2;
    j["S2_diag"] = r.S2_diag;
    j["S1_main"] = std::isnan(r.S1_main) ? nlohmann::json() : nlohmann::json(r.S1_main);
    j["S1_off"] = std::isnan(r.S1_off) ? nlohmann::json() : nlohmann::json(r.S1_off);
    j["S1_diag_lower"] = r.S1_diag_lower;
    j["holder_bound"] = r.holder_bound;
    j["ratio_moment"] = r.ratio_moment;
    j["ratio_bound"] = r.ratio_bound;
    j["resid_s2"] = r.resid_s2;
    j["resid_s1_imag"] = r.resid_s1_imag;
    j["t_lvalues"] = r.t_lvalues;
    j["t_resonator"] = r.t_resonator;
    j["t_row"] = r.t_row;
    return j;
}

} // namespace report
} // namespace lfmom
