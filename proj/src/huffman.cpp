#include "ecgz/huffman.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "ecgz/error.hpp"

namespace ecgz {

namespace {

std::uint32_t symbol_of(std::uint32_t v) { return v <= huffman::kDirectLimit ? v : huffman::kEscape; }

}  // namespace

Codebook::Codebook(std::vector<std::uint8_t> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.size() > huffman::kEscape + 1) throw CorruptStream("codebook alphabet too large");
  // Kraft sum in units of 2^-kMaxCodeLength.
  unsigned __int128 kraft = 0;
  bool any = false;
  for (auto len : lengths_) {
    if (len > huffman::kMaxCodeLength) throw CorruptStream("code length " + std::to_string(len) + " too long");
    if (len == 0) continue;
    any = true;
    kraft += static_cast<unsigned __int128>(1) << (huffman::kMaxCodeLength - len);
  }
  if (!any) {
    lengths_.clear();
    return;
  }
  if (kraft > (static_cast<unsigned __int128>(1) << huffman::kMaxCodeLength)) {
    throw CorruptStream("over-subscribed codebook");
  }
  while (!lengths_.empty() && lengths_.back() == 0) lengths_.pop_back();
  assign_codes();
}

void Codebook::assign_codes() {
  sorted_.clear();
  for (std::uint32_t s = 0; s < lengths_.size(); ++s) {
    if (lengths_[s]) sorted_.push_back(s);
  }
  std::stable_sort(sorted_.begin(), sorted_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return lengths_[a] < lengths_[b]; });

  codes_.assign(lengths_.size(), 0);
  first_code_.assign(huffman::kMaxCodeLength + 2, 0);
  first_index_.assign(huffman::kMaxCodeLength + 2, 0);
  count_.assign(huffman::kMaxCodeLength + 2, 0);

  std::uint64_t code = 0;
  int prev_len = lengths_[sorted_.front()];
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    const std::uint32_t s = sorted_[i];
    const int len = lengths_[s];
    if (i > 0) {
      ++code;
      code <<= (len - prev_len);
    }
    if (count_[len] == 0) {
      first_code_[len] = code;
      first_index_[len] = static_cast<std::uint32_t>(i);
    }
    ++count_[len];
    codes_[s] = code;
    prev_len = len;
  }
}

Codebook Codebook::build(std::span<const std::uint32_t> values) {
  if (values.empty()) return {};
  std::uint32_t max_sym = 0;
  for (auto v : values) max_sym = std::max(max_sym, symbol_of(v));
  std::vector<std::uint64_t> freq(max_sym + 1, 0);
  for (auto v : values) ++freq[symbol_of(v)];

  std::vector<std::uint8_t> lengths(max_sym + 1, 0);
  std::vector<std::uint32_t> used;
  for (std::uint32_t s = 0; s <= max_sym; ++s) {
    if (freq[s]) used.push_back(s);
  }
  if (used.size() == 1) {
    lengths[used[0]] = 1;
    return Codebook(std::move(lengths));
  }

  // Nodes 0..used-1 are leaves; internal nodes follow. Ties break on node id,
  // which makes the tree (and so the file) deterministic.
  struct Node {
    std::uint64_t weight;
    std::uint32_t id;
  };
  auto heavier = [](const Node& a, const Node& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(heavier)> heap(heavier);
  std::vector<std::uint32_t> parent(2 * used.size() - 1, 0);
  for (std::uint32_t i = 0; i < used.size(); ++i) heap.push({freq[used[i]], i});
  std::uint32_t next = static_cast<std::uint32_t>(used.size());
  while (heap.size() > 1) {
    const Node a = heap.top();
    heap.pop();
    const Node b = heap.top();
    heap.pop();
    parent[a.id] = next;
    parent[b.id] = next;
    heap.push({a.weight + b.weight, next});
    ++next;
  }
  const std::uint32_t root = next - 1;
  std::vector<std::uint32_t> depth(next, 0);
  for (std::uint32_t id = root; id-- > 0;) depth[id] = depth[parent[id]] + 1;
  for (std::uint32_t i = 0; i < used.size(); ++i) {
    if (depth[i] > huffman::kMaxCodeLength) throw ArgumentError("Huffman code length exceeds 63 bits");
    lengths[used[i]] = static_cast<std::uint8_t>(depth[i]);
  }
  return Codebook(std::move(lengths));
}

void Codebook::write(BitWriter& out) const {
  out.put(max_symbol(), 16);
  if (lengths_.empty()) {
    out.put(0, 6);
    out.put_gamma(1);
    return;
  }
  std::size_t i = 0;
  while (i < lengths_.size()) {
    std::size_t run = 1;
    while (i + run < lengths_.size() && lengths_[i + run] == lengths_[i]) ++run;
    out.put(lengths_[i], 6);
    out.put_gamma(run);
    i += run;
  }
}

Codebook Codebook::read(BitReader& in) {
  const std::size_t alphabet = static_cast<std::size_t>(in.get(16)) + 1;
  if (alphabet > huffman::kEscape + 1) throw CorruptStream("codebook alphabet too large");
  std::vector<std::uint8_t> lengths;
  lengths.reserve(alphabet);
  while (lengths.size() < alphabet) {
    const auto len = static_cast<std::uint8_t>(in.get(6));
    const std::uint64_t run = in.get_gamma();
    if (run > alphabet - lengths.size()) throw CorruptStream("codebook run overflows alphabet");
    lengths.insert(lengths.end(), run, len);
  }
  return Codebook(std::move(lengths));
}

void Codebook::encode(BitWriter& out, std::span<const std::uint32_t> values) const {
  for (auto v : values) {
    const std::uint32_t s = symbol_of(v);
    if (s >= lengths_.size() || lengths_[s] == 0) {
      throw ArgumentError("value " + std::to_string(v) + " has no code in this codebook");
    }
    out.put(codes_[s], lengths_[s]);
    if (s == huffman::kEscape) out.put(v, 32);
  }
}

std::vector<std::uint32_t> Codebook::decode(BitReader& in, std::size_t count) const {
  std::vector<std::uint32_t> out;
  if (count == 0) return out;
  if (empty()) throw CorruptStream("symbols present but codebook is empty");
  if (count > in.remaining()) throw CorruptStream("symbol count exceeds available bits");
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::uint64_t code = 0;
    int len = 0;
    for (;;) {
      code = (code << 1) | (in.get_bit() ? 1u : 0u);
      ++len;
      if (len > huffman::kMaxCodeLength) throw CorruptStream("invalid code");
      if (count_[len] && code >= first_code_[len] && code - first_code_[len] < count_[len]) {
        const std::uint32_t s = sorted_[first_index_[len] + (code - first_code_[len])];
        out.push_back(s == huffman::kEscape ? static_cast<std::uint32_t>(in.get(32)) : s);
        break;
      }
    }
  }
  return out;
}

HuffmanPayload huffman_encode(std::span<const std::uint32_t> values) {
  HuffmanPayload p;
  p.codebook = Codebook::build(values);
  BitWriter w;
  p.codebook.encode(w, values);
  p.bit_count = w.bit_count();
  p.bits = std::move(w).take();
  return p;
}

std::vector<std::uint32_t> huffman_decode(std::span<const std::uint8_t> bits, std::uint64_t bit_count,
                                          const Codebook& codebook, std::size_t count) {
  BitReader r(bits, bit_count);
  return codebook.decode(r, count);
}

}  // namespace ecgz
