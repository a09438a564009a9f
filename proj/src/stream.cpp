#include "tdeg/stream.hpp"

#include <algorithm>
#include <limits>

#include "tdeg/error.hpp"

namespace tdeg {

BitWord BitWord::from_string(std::string_view bits) {
  BitWord out;
  out.bits_.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw ParseError(i, "expected '0' or '1'");
    out.bits_.push_back(bits[i]);
  }
  return out;
}

BitWord BitWord::prefix(std::size_t length) const {
  BitWord out;
  out.bits_ = bits_.substr(0, length);
  return out;
}

bool BlockStream::next() {
  if (started_ && zeros_left_ > 0) {
    --zeros_left_;
    return false;
  }
  const std::uint64_t index = started_ ? block_ + 1 : 0;
  const Integer size = f_(index);
  if (size < 0)
    throw NegativeBlockError("block " + std::to_string(index) + " has negative size " + size.get_str());
  // Sizes past 64 bits can never be exhausted by a materialized prefix.
  zeros_left_ = mpz_sizeinbase(size.get_mpz_t(), 2) > 64 ? std::numeric_limits<std::uint64_t>::max() : to_u64(size);
  block_ = index;
  started_ = true;
  return true;
}

BitWord BlockStream::take(std::size_t count) {
  BitWord out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
  return out;
}

BitWord stream_prefix(const BlockFunction& f, std::size_t length) { return BlockStream(f).take(length); }

BlockSeq parse_blocks(const BitWord& word) {
  BlockSeq out;
  if (word.empty()) return out;
  if (!word[0]) throw MalformedStreamError("stream must start with '1'");
  std::uint64_t run = 0;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i]) {
      out.sizes.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  out.trailing = run;
  return out;
}

bool prefix_equal(const BlockFunction& f, const BlockFunction& g, std::size_t length) {
  BlockStream a(f), b(g);
  for (std::size_t i = 0; i < length; ++i)
    if (a.next() != b.next()) return false;
  return true;
}

bool agree_on_common_prefix(const BitWord& a, const BitWord& b) {
  const std::size_t n = std::min(a.size(), b.size());
  return a.str().compare(0, n, b.str(), 0, n) == 0;
}

std::string join_sizes(const std::vector<std::uint64_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes[i]);
  }
  return out;
}

}  // namespace tdeg
