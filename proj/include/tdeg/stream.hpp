#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdeg/block_function.hpp"

namespace tdeg {

/// Finite word over {0, 1}.
class BitWord {
 public:
  BitWord() = default;
  /// Throws ParseError on characters other than '0' and '1'.
  static BitWord from_string(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitWord& other) { bits_ += other.bits_; }
  void append_zeros(std::size_t count) { bits_.append(count, '0'); }
  void reserve(std::size_t n) { bits_.reserve(n); }

  BitWord prefix(std::size_t length) const;
  const std::string& str() const { return bits_; }

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  std::string bits_;
};

/// Lazily generates <f> = 1 0^f(0) 1 0^f(1) ... one bit at a time.
/// Holds only the current block index and the zeros still owed.
class BlockStream {
 public:
  explicit BlockStream(BlockFunction f) : f_(std::move(f)) {}

  /// Throws NegativeBlockError when the next block has negative size.
  bool next();
  BitWord take(std::size_t count);

 private:
  BlockFunction f_;
  std::uint64_t block_ = 0;
  std::uint64_t zeros_left_ = 0;
  bool started_ = false;
};

struct BlockSeq {
  std::vector<std::uint64_t> sizes;       // complete blocks
  std::optional<std::uint64_t> trailing;  // zeros after the last '1'; absent for the empty word
};

BitWord stream_prefix(const BlockFunction& f, std::size_t length);

/// Splits a word into blocks. The run after the last '1' is not known to be
/// complete and is reported separately. Throws MalformedStreamError on a leading '0'.
BlockSeq parse_blocks(const BitWord& word);

bool prefix_equal(const BlockFunction& f, const BlockFunction& g, std::size_t length);

/// Compares two finite outputs up to the shorter one.
bool agree_on_common_prefix(const BitWord& a, const BitWord& b);

/// "0,1,2"
std::string join_sizes(const std::vector<std::uint64_t>& sizes);

}  // namespace tdeg
