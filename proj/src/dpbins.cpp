#include "repsum/dpbins.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <ostream>

namespace repsum {

std::strong_ordering compare_chi(const Subset& a, const Subset& b) {
  auto ia = a.indices().rbegin();
  auto ib = b.indices().rbegin();
  for (; ia != a.indices().rend() && ib != b.indices().rend(); ++ia, ++ib) {
    if (*ia != *ib) return *ia <=> *ib;
  }
  if (ia != a.indices().rend()) return std::strong_ordering::greater;
  if (ib != b.indices().rend()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

ReachTable::ReachTable(std::span<const std::uint64_t> residues, std::uint64_t p, const TableOptions& options)
    : n_(residues.size()), p_(p), words_(0), residues_(residues.begin(), residues.end()) {
  if (p < 1) throw InvalidParameter("dp table modulus must be >= 1");
  words_ = static_cast<std::size_t>((p + 63) / 64);
  const long double bytes = static_cast<long double>(n_ + 1) * static_cast<long double>(words_) * 8.0L;
  if (bytes > static_cast<long double>(options.memory_cap_bytes)) {
    throw ResourceLimit("reachability table (n=" + std::to_string(n_) + ", p=" + std::to_string(p_) +
                        ") exceeds the memory cap");
  }
  for (auto& r : residues_) r %= p_;
  bits_.assign((n_ + 1) * words_, 0);
  bits_[0] = 1;
  const std::uint64_t tail = p_ % 64;
  for (std::size_t i = 1; i <= n_; ++i) {
    const std::uint64_t* prev = &bits_[(i - 1) * words_];
    std::uint64_t* cur = &bits_[i * words_];
    const std::uint64_t r = residues_[i - 1];
    const auto bit = [&](std::uint64_t x) { return (prev[x >> 6U] >> (x & 63U)) & 1U; };
    for (std::size_t w = 0; w < words_; ++w) {
      // bits 64w .. 64w+63 of prev rotated by r: prev[(j - r) mod p]
      const std::uint64_t lo = 64 * static_cast<std::uint64_t>(w);
      const std::uint64_t width = std::min<std::uint64_t>(64, p_ - lo);
      const std::uint64_t start = lo >= r ? lo - r : lo + p_ - r;
      std::uint64_t shifted = 0;
      if (width == 64 && start + 64 <= p_) {
        const std::uint64_t off = start & 63U;
        const std::size_t base = static_cast<std::size_t>(start >> 6U);
        shifted = off == 0 ? prev[base] : (prev[base] >> off) | (prev[base + 1] << (64 - off));
      } else {
        for (std::uint64_t t = 0; t < width; ++t) {
          const std::uint64_t x = start + t >= p_ ? start + t - p_ : start + t;
          shifted |= bit(x) << t;
        }
      }
      cur[w] = prev[w] | shifted;
    }
    if (tail != 0) cur[words_ - 1] &= (std::uint64_t{1} << tail) - 1;
  }
}

std::vector<std::uint32_t> saturated_bin_sizes(std::span<const std::uint64_t> residues, std::uint64_t p) {
  if (p < 1) throw InvalidParameter("dp table modulus must be >= 1");
  constexpr std::uint32_t top = ~std::uint32_t{0};
  const auto add = [](std::uint32_t x, std::uint32_t y) { return x > top - y ? top : x + y; };
  std::vector<std::uint32_t> cur(p, 0), next(p);
  cur[0] = 1;
  for (std::uint64_t r : residues) {
    r %= p;
    for (std::uint64_t j = 0; j < r; ++j) next[j] = add(cur[j], cur[j + p - r]);
    for (std::uint64_t j = r; j < p; ++j) next[j] = add(cur[j], cur[j - r]);
    cur.swap(next);
  }
  return cur;
}

DpTable build_any_table(const Items& items, const Natural& p, const TableOptions& options) {
  if (!fits_u64(p)) throw ResourceLimit("dp table modulus beyond 64 bits");
  if (items.size() <= kMaxItemsForCount<std::uint64_t>) {
    return build_table<std::uint64_t>(items, to_u64(p), options);
  }
  return build_table<Natural>(items, to_u64(p), options);
}

namespace {

constexpr std::array<char, 4> kMagic{'R', 'S', 'D', 'P'};
constexpr std::uint32_t kDumpVersion = 1;

template <class T>
void put_le(std::ostream& out, T v) {
  for (unsigned i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

template <class T>
T get_le(std::istream& in) {
  T v = 0;
  for (unsigned i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw InvalidParameter("truncated table dump");
    v |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

void put_count(std::ostream& out, const Natural& c) {
  std::vector<unsigned char> bytes;
  boost::multiprecision::export_bits(c, std::back_inserter(bytes), 8, false);
  if (c == 0) bytes.clear();
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(bytes.size()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

void write_table_dump(std::ostream& out, const DpTable& table) {
  std::visit(
      [&](const auto& t) {
        out.write(kMagic.data(), kMagic.size());
        put_le<std::uint32_t>(out, kDumpVersion);
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.n()));
        put_le<std::uint64_t>(out, t.modulus());
        for (auto r : t.residues()) put_le<std::uint64_t>(out, r);
        for (std::size_t i = 0; i <= t.n(); ++i) {
          for (const auto& c : t.row(i)) put_count(out, Natural(c));
        }
      },
      table);
}

BasicDpTable<Natural> read_table_dump(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvalidParameter("not a table dump");
  if (get_le<std::uint32_t>(in) != kDumpVersion) throw InvalidParameter("unsupported table dump version");
  const auto n = get_le<std::uint32_t>(in);
  const auto p = get_le<std::uint64_t>(in);
  if (p < 1) throw InvalidParameter("table dump with zero modulus");
  std::vector<std::uint64_t> residues(n);
  for (auto& r : residues) r = get_le<std::uint64_t>(in);
  std::vector<Natural> counts;
  counts.reserve((static_cast<std::size_t>(n) + 1) * p);
  for (std::uint64_t e = 0; e < (static_cast<std::uint64_t>(n) + 1) * p; ++e) {
    const auto len = get_le<std::uint32_t>(in);
    std::vector<unsigned char> bytes(len);
    in.read(reinterpret_cast<char*>(bytes.data()), len);
    if (!in) throw InvalidParameter("truncated table dump");
    Natural c = 0;
    if (len != 0) boost::multiprecision::import_bits(c, bytes.begin(), bytes.end(), 8, false);
    counts.push_back(std::move(c));
  }
  return BasicDpTable<Natural>::from_raw(std::move(residues), p, std::move(counts));
}

}  // namespace repsum
