// SPDX-License-Identifier: MIT
// SPDX-FileCopyrightText: Copyright 2026 zobrist-sr contributors

#ifndef ZSR_DATASET_HPP
#define ZSR_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace zsr {

// Half-open row interval [Start, Start + Size).
struct Range {
    size_t Start{0};
    size_t Size{0};

    [[nodiscard]] constexpr auto End() const noexcept -> size_t { return Start + Size; }
    friend constexpr auto operator==(Range, Range) noexcept -> bool = default;
};

// Column store of named numeric features plus a target column. Rows are stored
// in split order: the training rows come first, then the test rows.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> featureNames, std::vector<std::vector<double>> features,
        std::string targetName, std::vector<double> target, double trainFraction);

    [[nodiscard]] auto Rows() const noexcept -> size_t { return target_.size(); }
    [[nodiscard]] auto FeatureCount() const noexcept -> size_t { return features_.size(); }
    [[nodiscard]] auto FeatureNames() const noexcept -> std::vector<std::string> const& { return names_; }
    [[nodiscard]] auto TargetName() const noexcept -> std::string const& { return targetName_; }

    [[nodiscard]] auto Feature(size_t i) const -> std::span<double const> { return features_.at(i); }
    [[nodiscard]] auto Target() const noexcept -> std::span<double const> { return target_; }
    [[nodiscard]] auto Target(Range r) const -> std::span<double const>;

    [[nodiscard]] auto Training() const noexcept -> Range { return train_; }
    [[nodiscard]] auto Test() const noexcept -> Range { return test_; }

    // Original (file) row index of every stored row.
    [[nodiscard]] auto RowOrder() const noexcept -> std::vector<size_t> const& { return order_; }

    // Permutes rows with a seeded shuffle; the train/test boundary stays where it was.
    void Shuffle(uint64_t seed);

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> features_;
    std::string targetName_;
    std::vector<double> target_;
    std::vector<size_t> order_;
    Range train_;
    Range test_;
};

// Reads an RFC-4180-style CSV file with a header row. Rows are shuffled with
// `shuffleSeed` before splitting into train/test partitions.
auto IngestCsv(std::string const& path, std::string const& target, double trainFraction, uint64_t shuffleSeed) -> Dataset;

// Same as IngestCsv but from in-memory text; `source` is used in diagnostics.
auto ParseCsv(std::string const& text, std::string const& target, double trainFraction, uint64_t shuffleSeed,
    std::string const& source = "<memory>") -> Dataset;

// Built-in problems:
//   poly2: y = x1^2 + x1*x2,            x ~ U(-2, 2)
//   trig:  y = 1.5*sin(0.8*x1) + x2,    x ~ U(-3, 3)
// Optional additive gaussian noise with standard deviation `noise`.
auto MakeSynthetic(std::string const& name, size_t rows, uint64_t seed, double trainFraction = 0.8, double noise = 0.0) -> Dataset;

} // namespace zsr

#endif
