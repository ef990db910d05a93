#include <sstream>

#include <json.hpp>

#include "invdim/cli.hpp"

namespace invdim::cli {
namespace {

using nlohmann::json;

json coefficient_array(const std::vector<BigInt>& values) {
    json out = json::array();
    for (const auto& v : values) out.push_back(v.get_str());
    return out;
}

// t, t^2, t^{12}: braces only where a multi-digit exponent needs them.
std::string plain_power(std::int64_t k) {
    if (k == 1) return "t";
    const auto digits = std::to_string(k);
    return digits.size() == 1 ? "t^" + digits : "t^{" + digits + "}";
}

std::string latex_power(std::int64_t k) {
    return k == 1 ? "t" : "t^{" + std::to_string(k) + "}";
}

std::string signed_int(std::int64_t v) {
    return (v > 0 ? "+" : "") + std::to_string(v);
}

}  // namespace

std::string render_dim(const JobSpec& job, const BigInt& nu) {
    switch (job.format) {
    case Format::json:
        return json{{"n", job.n}, {"d", job.d}, {"k", job.k}, {"nu", nu.get_str()}}.dump();
    case Format::latex:
        return "\\nu_{" + std::to_string(job.n) + "," + std::to_string(job.d) + "}(" +
               std::to_string(job.k) + ") = " + nu.get_str();
    case Format::plain:
        break;
    }
    return nu.get_str();
}

std::string render_series(const poincare::SeriesTruncation& series, Format format) {
    if (format == Format::json) {
        return json{{"n", series.n},
                    {"d", series.d},
                    {"max_degree", series.max_degree},
                    {"coefficients", coefficient_array(series.coefficients)}}
            .dump();
    }

    const bool latex = format == Format::latex;
    std::ostringstream out;
    if (latex) out << "\\,";
    bool first = true;
    for (std::size_t k = 0; k < series.coefficients.size(); ++k) {
        const auto& c = series.coefficients[k];
        if (sgn(c) == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (k == 0) {
            out << c.get_str();
            continue;
        }
        if (c != 1) out << c.get_str() << (latex ? "\\," : " ");
        out << (latex ? latex_power(static_cast<std::int64_t>(k))
                      : plain_power(static_cast<std::int64_t>(k)));
    }
    if (first) out << '0';
    if (latex) out << " + \\dots";
    return out.str();
}

std::string render_orbit(int n, const std::vector<weyl::SignedDominantTerm>& terms, Format format) {
    if (format == Format::json) {
        json items = json::array();
        for (const auto& t : terms) {
            items.push_back({{"weight", t.dominant.coords}, {"multiplicity", t.multiplicity}});
        }
        return json{{"n", n}, {"terms", items}}.dump();
    }

    std::ostringstream out;
    if (format == Format::latex) {
        const auto c = "c_{" + std::to_string(n) + ",d}(k,";
        out << "\\nu_{" << n << ",d}(k) = ";
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto m = terms[i].multiplicity;
            if (i > 0) out << (m < 0 ? " - " : " + ");
            else if (m < 0) out << '-';
            const auto magnitude = m < 0 ? -m : m;
            if (magnitude != 1) out << magnitude << "\\,";
            out << c << terms[i].dominant.to_string() << ')';
        }
        return out.str();
    }

    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out << ' ';
        out << terms[i].dominant.to_string() << ':' << signed_int(terms[i].multiplicity);
    }
    return out.str();
}

std::string render_check(const CheckReport& report, Format format) {
    const std::string status =
        report.first_mismatch ? "FAIL" : (report.aborted ? "INCOMPLETE" : "PASS");

    if (format == Format::json) {
        json rows = json::array();
        for (const auto& row : report.rows) {
            json values = json::object();
            for (const auto& [name, v] : row.values) values[name] = v.get_str();
            rows.push_back({{"k", row.k}, {"values", values}, {"pass", row.pass}});
        }
        json doc = {{"n", report.n},     {"d", report.d},           {"max_degree", report.max_degree},
                    {"rows", rows},      {"status", status},        {"first_mismatch", nullptr},
                    {"aborted", nullptr}};
        if (report.first_mismatch) doc["first_mismatch"] = *report.first_mismatch;
        if (report.aborted) doc["aborted"] = *report.aborted;
        return doc.dump();
    }

    std::ostringstream out;
    out << "check n=" << report.n << " d=" << report.d << " K=" << report.max_degree << '\n';
    for (const auto& row : report.rows) {
        out << "k=" << row.k << ' ' << (row.pass ? "PASS" : "FAIL");
        for (const auto& [name, v] : row.values) out << ' ' << name << '=' << v.get_str();
        out << '\n';
    }
    if (report.aborted) out << "aborted: " << *report.aborted << '\n';
    out << status;
    if (report.first_mismatch) out << " (first mismatch at k=" << *report.first_mismatch << ')';
    return out.str();
}

}  // namespace invdim::cli
