#include "starnet/encoding.hpp"

#include <algorithm>

#include "starnet/errors.hpp"

namespace starnet::encoding {

namespace {
void check_index(const EncodingTable& t, int i) {
  if (i < 1 || i > t.size()) throw IndexError("row index out of range [1, 2^{m-1}]");
}
}  // namespace

const std::string& EncodingTable::row(int i) const {
  check_index(*this, i);
  return rows_[static_cast<std::size_t>(i - 1)];
}

int EncodingTable::bit(int i, int x) const {
  const std::string& r = row(i);
  if (x < 1 || x > m_) throw IndexError("setting index out of range [1, m]");
  return r[static_cast<std::size_t>(x - 1)] == '1' ? 1 : 0;
}

EncodingTable generate_table(int m) {
  if (m < 2) throw InvalidScenarioError("encoding table requires m >= 2");
  if (m > 20) throw CapacityError("encoding table has 2^{m-1} rows; m > 20 refused");

  // Suffix enumeration in integer order is lexicographic once the fixed
  // leading '0' is prepended.
  const int count = 1 << (m - 1);
  EncodingTable table;
  table.m_ = m;
  table.rows_.reserve(static_cast<std::size_t>(count));
  for (int value = 0; value < count; ++value) {
    std::string row(static_cast<std::size_t>(m), '0');
    for (int x = 1; x < m; ++x) {
      if ((value >> (m - 1 - x)) & 1) row[static_cast<std::size_t>(x)] = '1';
    }
    table.rows_.push_back(std::move(row));
  }
  return table;
}

SignVector sign_vector(const EncodingTable& table, int i) {
  check_index(table, i);
  const std::string& row = table.row(i);
  SignVector signs(static_cast<std::size_t>(table.m()));
  for (int x = 0; x < table.m(); ++x) {
    signs[static_cast<std::size_t>(x)] = row[static_cast<std::size_t>(x)] == '1' ? -1 : +1;
  }
  return signs;
}

int hamming_weight(const EncodingTable& table, int i) {
  check_index(table, i);
  const std::string& row = table.row(i);
  return static_cast<int>(std::count(row.begin(), row.end(), '1'));
}

}  // namespace starnet::encoding
