// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#include "zsr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>
#include <fmt/format.h>

#include "zsr/random.hpp"

namespace zsr {

Dataset::Dataset(std::vector<std::string> featureNames, std::vector<std::vector<double>> features,
    std::string targetName, std::vector<double> target, double trainFraction)
    : names_(std::move(featureNames))
    , features_(std::move(features))
    , targetName_(std::move(targetName))
    , target_(std::move(target))
{
    if (names_.size() != features_.size()) {
        throw std::invalid_argument("feature name count does not match column count");
    }
    for (auto const& c : features_) {
        if (c.size() != target_.size()) {
            throw std::invalid_argument("all columns must have the same number of rows");
        }
    }
    if (!(trainFraction > 0.0 && trainFraction < 1.0)) {
        throw std::invalid_argument(fmt::format("train fraction must lie in (0, 1), got {}", trainFraction));
    }
    auto const rows = target_.size();
    auto const trainRows = static_cast<size_t>(std::llround(trainFraction * static_cast<double>(rows)));
    if (trainRows == 0 || trainRows >= rows) {
        throw std::invalid_argument(fmt::format("a train fraction of {} leaves an empty partition for {} rows", trainFraction, rows));
    }
    train_ = { 0, trainRows };
    test_ = { trainRows, rows - trainRows };
    order_.resize(rows);
    std::iota(order_.begin(), order_.end(), size_t { 0 });
}

auto Dataset::Target(Range r) const -> std::span<double const>
{
    if (r.End() > target_.size()) {
        throw std::out_of_range("target range out of bounds");
    }
    return std::span<double const>(target_).subspan(r.Start, r.Size);
}

void Dataset::Shuffle(uint64_t seed)
{
    Random rng(seed);
    std::vector<size_t> perm(Rows());
    std::iota(perm.begin(), perm.end(), size_t { 0 });
    for (auto i = perm.size(); i > 1; --i) {
        auto j = rng.Below(i);
        std::swap(perm[i - 1], perm[j]);
    }
    auto apply = [&](auto& column) {
        std::remove_reference_t<decltype(column)> out(column.size());
        for (size_t i = 0; i < perm.size(); ++i) { out[i] = column[perm[i]]; }
        column = std::move(out);
    };
    for (auto& c : features_) { apply(c); }
    apply(target_);
    apply(order_);
}

namespace {
    // Splits one CSV record starting at `pos`; handles quoted fields and "" escapes.
    auto ReadRecord(std::string const& text, size_t& pos, std::vector<std::string>& fields) -> bool
    {
        fields.clear();
        if (pos >= text.size()) { return false; }
        std::string field;
        bool quoted = false;
        bool any = false;
        while (pos < text.size()) {
            char c = text[pos++];
            any = true;
            if (quoted) {
                if (c == '"') {
                    if (pos < text.size() && text[pos] == '"') {
                        field += '"';
                        ++pos;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n' || c == '\r') {
                if (c == '\r' && pos < text.size() && text[pos] == '\n') { ++pos; }
                break;
            } else {
                field += c;
            }
        }
        if (quoted) {
            throw std::runtime_error("unterminated quoted field");
        }
        fields.push_back(std::move(field));
        return any;
    }

    auto Trim(std::string_view s) -> std::string_view
    {
        auto const ws = " \t";
        auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos) { return {}; }
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    auto ParseNumber(std::string_view s, double& value) -> bool
    {
        s = Trim(s);
        if (s.empty()) { return false; }
        if (s.front() == '+') { s.remove_prefix(1); }
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        return ec == std::errc() && p == s.data() + s.size() && std::isfinite(value);
    }

    auto IsBlank(std::vector<std::string> const& fields) -> bool
    {
        return fields.size() == 1 && Trim(fields.front()).empty();
    }
} // namespace

auto ParseCsv(std::string const& text, std::string const& target, double trainFraction, uint64_t shuffleSeed,
    std::string const& source) -> Dataset
{
    size_t pos = 0;
    std::vector<std::string> fields;

    std::vector<std::string> header;
    while (ReadRecord(text, pos, fields)) {
        if (!IsBlank(fields)) {
            header = fields;
            break;
        }
    }
    if (header.empty()) {
        throw std::runtime_error(fmt::format("{}: empty file", source));
    }
    for (auto& h : header) { h = std::string(Trim(h)); }

    auto targetIt = std::ranges::find(header, target);
    if (targetIt == header.end()) {
        throw std::runtime_error(fmt::format("{}: target column '{}' not found; available columns: {}", source, target,
            fmt::join(header, ", ")));
    }
    auto const targetCol = static_cast<size_t>(std::distance(header.begin(), targetIt));

    std::vector<std::vector<double>> columns(header.size());
    std::vector<std::string> problems;
    size_t line = 1;
    while (ReadRecord(text, pos, fields)) {
        ++line;
        if (IsBlank(fields)) { continue; }
        if (fields.size() != header.size()) {
            problems.push_back(fmt::format("row {}: expected {} fields, found {}", line, header.size(), fields.size()));
            continue;
        }
        std::vector<double> values(fields.size());
        std::vector<std::string> bad;
        for (size_t j = 0; j < fields.size(); ++j) {
            if (!ParseNumber(fields[j], values[j])) {
                bad.push_back(fmt::format("{}='{}'", header[j], fields[j]));
            }
        }
        if (!bad.empty()) {
            problems.push_back(fmt::format("row {}: non-numeric {}", line, fmt::join(bad, ", ")));
            continue;
        }
        for (size_t j = 0; j < fields.size(); ++j) { columns[j].push_back(values[j]); }
    }
    if (!problems.empty()) {
        constexpr size_t shown = 10;
        auto const n = std::min(problems.size(), shown);
        throw std::runtime_error(fmt::format("{}: {} malformed row(s):\n  {}{}", source, problems.size(),
            fmt::join(problems.begin(), problems.begin() + static_cast<std::ptrdiff_t>(n), "\n  "),
            problems.size() > shown ? "\n  ..." : ""));
    }
    if (columns[targetCol].empty()) {
        throw std::runtime_error(fmt::format("{}: no data rows", source));
    }

    std::vector<std::string> names;
    std::vector<std::vector<double>> features;
    for (size_t j = 0; j < header.size(); ++j) {
        if (j == targetCol) { continue; }
        names.push_back(header[j]);
        features.push_back(std::move(columns[j]));
    }
    Dataset ds(std::move(names), std::move(features), target, std::move(columns[targetCol]), trainFraction);
    ds.Shuffle(shuffleSeed);
    return ds;
}

auto IngestCsv(std::string const& path, std::string const& target, double trainFraction, uint64_t shuffleSeed) -> Dataset
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ParseCsv(buffer.str(), target, trainFraction, shuffleSeed, path);
}

auto MakeSynthetic(std::string const& name, size_t rows, uint64_t seed, double trainFraction, double noise) -> Dataset
{
    Random rng(seed);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.Uniform(); };
    std::normal_distribution<double> gauss(0.0, noise > 0 ? noise : 1.0);

    std::vector<double> x1(rows);
    std::vector<double> x2(rows);
    std::vector<double> y(rows);
    if (name == "poly2") {
        for (size_t i = 0; i < rows; ++i) {
            x1[i] = uniform(-2, 2);
            x2[i] = uniform(-2, 2);
            y[i] = x1[i] * x1[i] + x1[i] * x2[i];
        }
    } else if (name == "trig") {
        for (size_t i = 0; i < rows; ++i) {
            x1[i] = uniform(-3, 3);
            x2[i] = uniform(-3, 3);
            y[i] = 1.5 * std::sin(0.8 * x1[i]) + x2[i];
        }
    } else {
        throw std::invalid_argument(fmt::format("unknown synthetic problem '{}' (expected poly2 or trig)", name));
    }
    if (noise > 0) {
        for (auto& v : y) { v += gauss(rng); }
    }
    return Dataset({ "x1", "x2" }, { std::move(x1), std::move(x2) }, "y", std::move(y), trainFraction);
}

} // namespace zsr
