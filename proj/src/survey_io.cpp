#include "qlogic/survey_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace qlogic::survey {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

int parse_answer(std::string_view field, const char* column, int line) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    throw SurveyError(ErrorKind::schema,
                      std::string(column) + " must be 0 or 1, got '" + std::string(field) +
                          "' (only yes/no questions are supported)",
                      line);
}

Count parse_count(std::string_view field, int line) {
    long long value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw SurveyError(ErrorKind::schema, "count must be an integer, got '" + std::string(field) + "'", line);
    }
    if (value < 0) throw SurveyError(ErrorKind::negative_count, "count " + std::to_string(value) + " is negative", line);
    return static_cast<Count>(value);
}

std::string fmt(double x, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string cell_label(const ReconstructionReport& r, int a, int b) {
    return r.label_a + "=" + std::to_string(a) + " " + r.label_b + "=" + std::to_string(b);
}

nlohmann::json exact_cells(const ExactTable& t) {
    nlohmann::json out = nlohmann::json::array();
    for (int f = 1; f >= 0; --f) {
        for (int s = 1; s >= 0; --s) {
            out.push_back({{"first", f},
                           {"second", s},
                           {"value", static_cast<double>(t.at(f, s))},
                           {"exact", t.at(f, s).str()}});
        }
    }
    return out;
}

nlohmann::json interval_cells(const std::array<Interval, 4>& cells, const char* k1, const char* k2) {
    nlohmann::json out = nlohmann::json::array();
    for (int f = 1; f >= 0; --f) {
        for (int s = 1; s >= 0; --s) {
            const Interval& iv = cells[cell_index(f, s)];
            out.push_back({{k1, f}, {k2, s}, {"point", iv.point}, {"lower", iv.lower}, {"upper", iv.upper}});
        }
    }
    return out;
}

nlohmann::json flag_cells(const std::array<bool, 4>& flags) {
    nlohmann::json out = nlohmann::json::array();
    for (int f = 1; f >= 0; --f)
        for (int s = 1; s >= 0; --s) out.push_back({{"first", f}, {"second", s}, {"flag", flags[cell_index(f, s)]}});
    return out;
}

struct BarGroup {
    std::string label;
    std::array<double, 4> values;  // seq AB, seq BA, logical AB, logical BA
};

std::vector<BarGroup> bar_groups(const ReconstructionReport& r) {
    std::vector<BarGroup> groups;
    for (int a = 1; a >= 0; --a) {
        for (int b = 1; b >= 0; --b) {
            groups.push_back({cell_label(r, a, b),
                              {static_cast<double>(r.sequential.ab.at(a, b)), static_cast<double>(r.sequential.ba.at(b, a)),
                               static_cast<double>(r.logical.ab.at(a, b)), static_cast<double>(r.logical.ba.at(b, a))}});
        }
    }
    return groups;
}

}  // namespace

SequentialCountTable parse_counts(std::istream& in) {
    std::string label_a = "A";
    std::string label_b = "B";
    std::string raw;
    int line = 0;
    bool header = false;
    while (!header && std::getline(in, raw)) {
        ++line;
        const std::string_view s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '#') {
            const std::string_view body = trim(s.substr(1));
            constexpr std::string_view key = "labels:";
            if (body.substr(0, key.size()) == key) {
                const auto parts = split(body.substr(key.size()), ',');
                if (parts.size() != 2 || parts[0].empty() || parts[1].empty() || parts[0] == parts[1]) {
                    throw SurveyError(ErrorKind::schema, "labels line needs two distinct names", line);
                }
                label_a = std::string(parts[0]);
                label_b = std::string(parts[1]);
            }
            continue;
        }
        if (s != "order,first,second,count") {
            throw SurveyError(ErrorKind::schema, "header must be 'order,first,second,count'", line);
        }
        header = true;
    }
    if (!header) throw SurveyError(ErrorKind::schema, "missing header 'order,first,second,count'");

    OrderCounts ab;
    OrderCounts ba;
    std::array<int, 8> seen_at{};
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view s = trim(raw);
        if (s.empty()) continue;
        const auto fields = split(s, ',');
        if (fields.size() != 4) {
            throw SurveyError(ErrorKind::schema, "expected 4 fields, got " + std::to_string(fields.size()), line);
        }
        int group = 0;
        if (fields[0] == "AB") group = 0;
        else if (fields[0] == "BA") group = 1;
        else throw SurveyError(ErrorKind::schema, "order must be AB or BA, got '" + std::string(fields[0]) + "'", line);
        const int first = parse_answer(fields[1], "first", line);
        const int second = parse_answer(fields[2], "second", line);
        const Count count = parse_count(fields[3], line);
        const std::size_t slot = 4 * static_cast<std::size_t>(group) + cell_index(first, second);
        if (seen_at[slot] != 0) {
            throw SurveyError(ErrorKind::duplicate_cell,
                              "cell (" + std::string(fields[0]) + "," + std::to_string(first) + "," +
                                  std::to_string(second) + ") already given on line " + std::to_string(seen_at[slot]),
                              line);
        }
        seen_at[slot] = line;
        (group == 0 ? ab : ba).at(first, second) = count;
    }
    for (std::size_t slot = 0; slot < 8; ++slot) {
        if (seen_at[slot] == 0) {
            const std::size_t k = slot % 4;
            throw SurveyError(ErrorKind::missing_cell, std::string("no row for (") + (slot < 4 ? "AB" : "BA") + "," +
                                                           std::to_string(k / 2) + "," + std::to_string(k % 2) + ")");
        }
    }
    return SequentialCountTable::create(ab, ba, std::move(label_a), std::move(label_b));
}

SequentialCountTable parse_counts_text(const std::string& text) {
    std::istringstream in(text);
    return parse_counts(in);
}

SequentialCountTable parse_counts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SurveyError(ErrorKind::schema, "cannot open '" + path + "'");
    return parse_counts(in);
}

std::string counts_to_csv(const SequentialCountTable& t) {
    std::ostringstream out;
    out << "# labels: " << t.label_a() << ',' << t.label_b() << '\n' << "order,first,second,count\n";
    for (int g = 0; g < 2; ++g) {
        const OrderCounts& c = g == 0 ? t.ab() : t.ba();
        for (int f = 1; f >= 0; --f)
            for (int s = 1; s >= 0; --s) out << (g == 0 ? "AB" : "BA") << ',' << f << ',' << s << ',' << c.at(f, s) << '\n';
    }
    return out.str();
}

nlohmann::json report_to_json(const ReconstructionReport& r, const nlohmann::json& meta) {
    nlohmann::json counts{{"AB", nlohmann::json::array()}, {"BA", nlohmann::json::array()}};
    for (int f = 1; f >= 0; --f) {
        for (int s = 1; s >= 0; --s) {
            counts["AB"].push_back({{"first", f}, {"second", s}, {"count", r.counts_ab.at(f, s)}});
            counts["BA"].push_back({{"first", f}, {"second", s}, {"count", r.counts_ba.at(f, s)}});
        }
    }
    nlohmann::json gap = nlohmann::json::array();
    for (int a = 1; a >= 0; --a)
        for (int b = 1; b >= 0; --b) gap.push_back({{"a", a}, {"b", b}, {"value", r.order_gap[cell_index(a, b)]}});

    const Rational xor_diff = r.xor_.ab - r.xor_.ba;
    const Rational conj_diff = r.logical.ab.at(1, 1) - r.logical.ba.at(1, 1);

    return {
        {"meta", meta},
        {"labels", {{"a", r.label_a}, {"b", r.label_b}}},
        {"totals", {{"AB", r.counts_ab.sum()}, {"BA", r.counts_ba.sum()}}},
        {"counts", counts},
        {"sequential", {{"AB", exact_cells(r.sequential.ab)}, {"BA", exact_cells(r.sequential.ba)}}},
        {"logical", {{"AB", exact_cells(r.logical.ab)}, {"BA", exact_cells(r.logical.ba)}}},
        {"xor",
         {{"AB", {{"value", static_cast<double>(r.xor_.ab)}, {"exact", r.xor_.ab.str()}}},
          {"BA", {{"value", static_cast<double>(r.xor_.ba)}, {"exact", r.xor_.ba.str()}}},
          {"difference_exact", xor_diff.str()},
          {"conjunction_difference_exact", conj_diff.str()}}},
        {"qq_equality", {{"statistic", r.qq.statistic}, {"p_value", r.qq.p_value}}},
        {"order_effect",
         {{"statistic", r.order_effect.statistic},
          {"p_value", r.order_effect.p_value},
          {"degrees_of_freedom", r.order_effect.degrees_of_freedom},
          {"warnings", r.order_effect.warnings}}},
        {"bootstrap",
         {{"iterations", r.bootstrap_options.iterations},
          {"confidence", r.bootstrap_options.confidence},
          {"seed", r.bootstrap_options.seed},
          {"logical_AB", interval_cells(r.bootstrap.logical_ab, "first", "second")},
          {"logical_BA", interval_cells(r.bootstrap.logical_ba, "first", "second")},
          {"order_difference", interval_cells(r.bootstrap.order_difference, "a", "b")}}},
        {"nonclassical", {{"AB", flag_cells(r.nonclassical_ab)}, {"BA", flag_cells(r.nonclassical_ba)}}},
        {"any_nonclassical", r.any_nonclassical()},
        {"order_gap", gap},
    };
}

std::string plot_data_csv(const ReconstructionReport& r) {
    static constexpr std::array<const char*, 4> series{"sequential_AB", "sequential_BA", "logical_AB", "logical_BA"};
    std::string out = "series,cell,value\n";
    const auto groups = bar_groups(r);
    for (std::size_t s = 0; s < series.size(); ++s) {
        for (const auto& g : groups) out += std::string(series[s]) + "," + g.label + "," + fmt(g.values[s], "%.17g") + "\n";
    }
    return out;
}

std::string report_to_text(const ReconstructionReport& r) {
    std::ostringstream out;
    const auto& A = r.label_a;
    const auto& B = r.label_b;
    out << "Two-order survey: " << A << " then " << B << " (N=" << r.counts_ab.sum() << "), " << B << " then " << A
        << " (N=" << r.counts_ba.sum() << ")\n\n";
    out << "columns: seq = observed order-sequential frequency, logic = reconstructed logical joint\n";
    out << "         AB = " << A << " asked first, BA = " << B << " asked first\n\n";
    out << std::string(24, ' ') << "      seq AB      seq BA    logic AB    logic BA\n";
    for (const auto& g : bar_groups(r)) {
        std::string label = g.label;
        label.resize(std::max<std::size_t>(label.size(), 24), ' ');
        out << label;
        for (double v : g.values) out << fmt(v, "%12.4f");
        out << '\n';
    }
    out << "\nbootstrap intervals (" << r.bootstrap_options.iterations << " iterations, seed "
        << r.bootstrap_options.seed << ")\n";
    for (int a = 1; a >= 0; --a) {
        for (int b = 1; b >= 0; --b) {
            const Interval& x = r.bootstrap.logical_ab[cell_index(a, b)];
            const Interval& y = r.bootstrap.logical_ba[cell_index(b, a)];
            const Interval& d = r.bootstrap.order_difference[cell_index(a, b)];
            out << "  " << cell_label(r, a, b) << ": " << A << '^' << B << " [" << fmt(x.lower, "%.4f") << ", "
                << fmt(x.upper, "%.4f") << "]  " << B << '^' << A << " [" << fmt(y.lower, "%.4f") << ", "
                << fmt(y.upper, "%.4f") << "]  difference [" << fmt(d.lower, "%.4f") << ", " << fmt(d.upper, "%.4f")
                << "]" << (r.nonclassical_ab[cell_index(a, b)] || r.nonclassical_ba[cell_index(b, a)] ? "  NON-CLASSICAL" : "")
                << '\n';
        }
    }
    out << "\nXOR, " << A << " first = " << fmt(static_cast<double>(r.xor_.ab), "%.4f") << ", XOR, " << B << " first = "
        << fmt(static_cast<double>(r.xor_.ba), "%.4f") << "\n";
    out << "quantum question equality: z = " << fmt(r.qq.statistic, "%.4f") << ", p = " << fmt(r.qq.p_value, "%.4g")
        << '\n';
    out << "order effect: chi2 = " << fmt(r.order_effect.statistic, "%.4f") << " (df "
        << r.order_effect.degrees_of_freedom << "), p = " << fmt(r.order_effect.p_value, "%.4g") << '\n';
    for (const auto& w : r.order_effect.warnings) out << "warning: " << w << '\n';
    out << "non-classical cells: " << (r.any_nonclassical() ? "yes" : "none") << '\n';
    return out.str();
}

namespace {

std::string xml_escape(const std::string& in) {
    std::string out;
    for (char ch : in) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const ReconstructionReport& r) {
    static constexpr std::array<const char*, 4> colors{"#1f4e9c", "#7fb2e5", "#b22222", "#f4a6a6"};
    const std::array<std::string, 4> names{"sequential " + r.label_a + "," + r.label_b,
                                           "sequential " + r.label_b + "," + r.label_a,
                                           "logical " + r.label_a + "^" + r.label_b,
                                           "logical " + r.label_b + "^" + r.label_a};
    const auto groups = bar_groups(r);

    double lo = 0.0;
    double hi = 0.0;
    for (const auto& g : groups)
        for (double v : g.values) lo = std::min(lo, v), hi = std::max(hi, v);
    lo = std::floor(lo * 10.0) / 10.0;
    hi = std::max(std::ceil(hi * 10.0) / 10.0, lo + 0.1);

    constexpr double width = 760.0, height = 440.0;
    constexpr double left = 60.0, right = 20.0, top = 50.0, bottom = 70.0;
    const double plot_h = height - top - bottom;
    const double plot_w = width - left - right;
    auto y_of = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width, "%.0f") << "\" height=\""
        << fmt(height, "%.0f") << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt(width / 2, "%.1f") << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << "Sequential and logical joint probabilities</text>\n";

    for (int t = 0; lo + 0.1 * t <= hi + 1e-9; ++t) {
        const double v = lo + 0.1 * t;
        const double y = y_of(v);
        svg << "<line x1=\"" << fmt(left, "%.1f") << "\" y1=\"" << fmt(y, "%.1f") << "\" x2=\"" << fmt(width - right, "%.1f")
            << "\" y2=\"" << fmt(y, "%.1f") << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt(left - 6, "%.1f") << "\" y=\"" << fmt(y + 4, "%.1f") << "\" text-anchor=\"end\">"
            << fmt(std::abs(v) < 1e-12 ? 0.0 : v, "%.1f") << "</text>\n";
    }
    svg << "<line x1=\"" << fmt(left, "%.1f") << "\" y1=\"" << fmt(y_of(0.0), "%.1f") << "\" x2=\""
        << fmt(width - right, "%.1f") << "\" y2=\"" << fmt(y_of(0.0), "%.1f") << "\" stroke=\"black\"/>\n";

    const double group_w = plot_w / static_cast<double>(groups.size());
    const double bar_w = group_w * 0.8 / 4.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double x0 = left + group_w * static_cast<double>(g) + group_w * 0.1;
        for (std::size_t s = 0; s < 4; ++s) {
            const double v = groups[g].values[s];
            const double y = std::min(y_of(v), y_of(0.0));
            const double h = std::abs(y_of(v) - y_of(0.0));
            svg << "<rect x=\"" << fmt(x0 + bar_w * static_cast<double>(s), "%.2f") << "\" y=\"" << fmt(y, "%.2f")
                << "\" width=\"" << fmt(bar_w * 0.92, "%.2f") << "\" height=\"" << fmt(h, "%.2f") << "\" fill=\""
                << colors[s] << "\"><title>" << xml_escape(names[s]) << ": " << fmt(v, "%.4f") << "</title></rect>\n";
        }
        svg << "<text x=\"" << fmt(x0 + group_w * 0.4, "%.1f") << "\" y=\"" << fmt(height - bottom + 18, "%.1f")
            << "\" text-anchor=\"middle\">" << xml_escape(groups[g].label) << "</text>\n";
    }
    for (std::size_t s = 0; s < 4; ++s) {
        const double x = left + 180.0 * static_cast<double>(s);
        const double y = height - 24.0;
        svg << "<rect x=\"" << fmt(x, "%.1f") << "\" y=\"" << fmt(y - 10, "%.1f") << "\" width=\"12\" height=\"12\" fill=\""
            << colors[s] << "\"/>\n<text x=\"" << fmt(x + 16, "%.1f") << "\" y=\"" << fmt(y, "%.1f") << "\">" << xml_escape(names[s])
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qlogic::survey
