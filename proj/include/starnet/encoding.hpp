#pragma once

#include <string>
#include <vector>

namespace starnet::encoding {

// The 2^{m-1} length-m bit strings with leading bit 0, in lexicographic
// order. Row i (1-based) fixes the +/- signs of the i-th correlation term:
// sign at setting x is (-1)^{bit x}. Row 1 is the all-zeros string.
class EncodingTable {
 public:
  int m() const { return m_; }
  int size() const { return static_cast<int>(rows_.size()); }

  // 1-based row index, matching the hub-input label.
  const std::string& row(int i) const;
  // 1-based row and setting; returns 0 or 1.
  int bit(int i, int x) const;

  const std::vector<std::string>& rows() const { return rows_; }

 private:
  friend EncodingTable generate_table(int m);
  int m_ = 0;
  std::vector<std::string> rows_;
};

// Entries in {+1, -1}; the first entry is always +1.
using SignVector = std::vector<int>;

EncodingTable generate_table(int m);

SignVector sign_vector(const EncodingTable& table, int i);

int hamming_weight(const EncodingTable& table, int i);

}  // namespace starnet::encoding
