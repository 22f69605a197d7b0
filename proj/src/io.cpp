#include "rvhedge/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rvhedge {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& field, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": bad number '" + field + "'");
    }
    if (used != field.size())
        throw std::invalid_argument(where + ": bad number '" + field + "'");
    return v;
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    std::size_t line_no = 0;

    CsvReader(const std::filesystem::path& p, const std::string& header) : path(p.string()) {
        in.open(p);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::string line;
        if (!std::getline(in, line)) throw std::invalid_argument(path + ": empty file");
        ++line_no;
        // tolerate a trailing carriage return from windows-edited files
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != header)
            throw std::invalid_argument(path + ": expected header '" + header + "', got '" +
                                        line + "'");
    }

    bool next(std::vector<std::string>& fields, std::size_t n_fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line == "\r") continue;
            fields = split_csv_line(line);
            if (fields.size() != n_fields)
                throw std::invalid_argument(where() + ": expected " + std::to_string(n_fields) +
                                            " fields, got " + std::to_string(fields.size()));
            return true;
        }
        return false;
    }

    std::string where() const { return path + ":" + std::to_string(line_no); }
};

} // namespace

VixIngest ingest_vix_csv(const std::filesystem::path& path) {
    CsvReader reader(path, "date,close");
    std::vector<std::pair<Date, double>> rows;
    std::vector<std::string> fields;
    while (reader.next(fields, 2)) {
        Date d;
        try {
            d = parse_date(fields[0]);
        } catch (const std::exception& e) {
            throw std::invalid_argument(reader.where() + ": " + e.what());
        }
        const double close = parse_double_field(fields[1], reader.where());
        if (!(close > 0.0))
            throw std::invalid_argument(reader.where() + ": non-positive close " + fields[1]);
        rows.emplace_back(d, close);
    }
    if (rows.empty()) throw std::invalid_argument(path.string() + ": no data rows");

    VixIngest out;
    if (!std::is_sorted(rows.begin(), rows.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; })) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        out.warnings.push_back(path.string() + ": rows out of order, sorted by date");
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].first == rows[i - 1].first)
            throw std::invalid_argument(path.string() + ": duplicate date " +
                                        format_date(rows[i].first));

    std::vector<Date> dates(rows.size());
    std::vector<double> values(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        dates[i] = rows[i].first;
        values[i] = rows[i].second;
    }
    out.series = DatedSeries(SeriesKind::VixLevel, std::move(dates), std::move(values));
    return out;
}

FvsIngest ingest_fvs_csv(const std::filesystem::path& path) {
    CsvReader reader(path, "date,maturity_date,forward_variance");
    FvsIngest out;
    std::vector<std::string> fields;
    bool any = false;
    while (reader.next(fields, 3)) {
        any = true;
        Date d, m;
        try {
            d = parse_date(fields[0]);
            m = parse_date(fields[1]);
        } catch (const std::exception& e) {
            throw std::invalid_argument(reader.where() + ": " + e.what());
        }
        const double v = parse_double_field(fields[2], reader.where());
        if (!(v > 0.0 && v < 4.0))
            throw std::invalid_argument(
                reader.where() + ": forward variance " + fields[2] +
                " outside (0, 4); annualized variance expected, check units");
        if (m < d)
            throw std::invalid_argument(reader.where() + ": maturity " + fields[1] +
                                        " before observation date " + fields[0]);
        try {
            out.store.insert(d, m, v);
        } catch (const std::exception& e) {
            throw std::invalid_argument(reader.where() + ": " + e.what());
        }
    }
    if (!any) throw std::invalid_argument(path.string() + ": no data rows");
    return out;
}

std::vector<OptionGrid> ingest_options_csv(const std::filesystem::path& path) {
    CsvReader reader(path, "date,maturity_date,strike,call_price,put_price");
    struct Row {
        double strike, call, put;
    };
    std::map<std::pair<Date, Date>, std::vector<Row>> groups;
    std::vector<std::string> fields;
    while (reader.next(fields, 5)) {
        Date d, m;
        try {
            d = parse_date(fields[0]);
            m = parse_date(fields[1]);
        } catch (const std::exception& e) {
            throw std::invalid_argument(reader.where() + ": " + e.what());
        }
        Row row{parse_double_field(fields[2], reader.where()),
                parse_double_field(fields[3], reader.where()),
                parse_double_field(fields[4], reader.where())};
        if (!(row.strike > 0.0))
            throw std::invalid_argument(reader.where() + ": non-positive strike");
        if (row.call < 0.0 || row.put < 0.0)
            throw std::invalid_argument(reader.where() + ": negative option price");
        groups[{d, m}].push_back(row);
    }
    if (groups.empty()) throw std::invalid_argument(path.string() + ": no data rows");

    std::vector<OptionGrid> out;
    for (auto& [key, rows] : groups) {
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.strike < b.strike; });
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].strike == rows[i - 1].strike)
                throw std::invalid_argument(path.string() + ": duplicate strike " +
                                            format_double(rows[i].strike) + " at " +
                                            format_date(key.first) + " / " +
                                            format_date(key.second));
        OptionGrid grid;
        grid.date = key.first;
        grid.maturity = key.second;
        std::vector<double> parity;
        for (const Row& r : rows) {
            grid.strikes.push_back(r.strike);
            grid.call_prices.push_back(r.call);
            grid.put_prices.push_back(r.put);
            parity.push_back(r.strike + r.call - r.put);
        }
        // Zero-rate put-call parity gives the forward at every strike; the
        // median is robust to a few noisy quotes.
        std::nth_element(parity.begin(), parity.begin() + parity.size() / 2, parity.end());
        grid.spot = parity[parity.size() / 2];
        out.push_back(std::move(grid));
    }
    return out;
}

void write_vix_csv(const std::filesystem::path& path, const DatedSeries& series) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write " + path.string());
    outf << "date,close\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        outf << format_date(series.date(i)) << ',' << format_double(series.value(i)) << '\n';
}

void write_fvs_csv(const std::filesystem::path& path, const ForwardVarianceStore& store) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write " + path.string());
    outf << "date,maturity_date,forward_variance\n";
    for (const auto& e : store.entries())
        outf << format_date(e.date) << ',' << format_date(e.maturity) << ','
             << format_double(e.value) << '\n';
}

} // namespace rvhedge
