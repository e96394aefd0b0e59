// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "phnu/error.hpp"

namespace phnu {

enum class TableFormat { text, csv };

/// How a numeric column is printed.
enum class ColumnStyle {
  integer,     // %d
  fixed,       // %.<digits>f
  scientific,  // %.<digits-1>e, `digits` significant digits
};

struct Column {
  std::string name;
  std::vector<double> values;
  ColumnStyle style = ColumnStyle::fixed;
  int digits = 8;
};

/// Named numeric series of equal length, rendered as right-aligned text or
/// CSV. Rounding is whatever printf does with the binary value, which is
/// correctly rounded (ties to even) on glibc.
class OutputTable {
 public:
  OutputTable& add(Column col) {
    if (!columns_.empty() && col.values.size() != rows()) {
      throw DomainError("OutputTable: column '" + col.name + "' has the wrong length");
    }
    columns_.push_back(std::move(col));
    return *this;
  }

  std::size_t rows() const { return columns_.empty() ? 0 : columns_.front().values.size(); }
  const std::vector<Column>& columns() const { return columns_; }

  void render(std::ostream& os, TableFormat fmt) const {
    std::vector<std::vector<std::string>> cells(columns_.size());
    std::vector<std::size_t> width(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      width[c] = columns_[c].name.size();
      for (double v : columns_[c].values) {
        cells[c].push_back(format_cell(columns_[c], v));
        width[c] = std::max(width[c], cells[c].back().size());
      }
    }
    auto emit_row = [&](auto&& get) {
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        const std::string cell = get(c);
        if (fmt == TableFormat::csv) {
          if (c) os << ',';
          os << cell;
        } else {
          if (c) os << "  ";
          os << std::string(width[c] - cell.size(), ' ') << cell;
        }
      }
      os << '\n';
    };
    emit_row([&](std::size_t c) { return columns_[c].name; });
    for (std::size_t r = 0; r < rows(); ++r) {
      emit_row([&](std::size_t c) { return cells[c][r]; });
    }
  }

  static std::string format_cell(const Column& col, double v) {
    char buf[64];
    switch (col.style) {
      case ColumnStyle::integer:
        std::snprintf(buf, sizeof buf, "%d", static_cast<int>(v));
        break;
      case ColumnStyle::fixed:
        std::snprintf(buf, sizeof buf, "%.*f", col.digits, v);
        break;
      case ColumnStyle::scientific:
        std::snprintf(buf, sizeof buf, "%.*e", std::max(col.digits - 1, 0), v);
        break;
    }
    return buf;
  }

 private:
  std::vector<Column> columns_;
};

}  // namespace phnu
