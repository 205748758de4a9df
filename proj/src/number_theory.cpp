#include "redheffer/number_theory.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace redheffer {

DivisorTables sieve_tables(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sieve_tables: n must be >= 1");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("sieve_tables: n too large for 32-bit spf storage");
  }

  DivisorTables t;
  t.n = n;
  t.mu.assign(n + 1, 0);
  t.sigma0.assign(n + 1, 0);
  t.sigma1.assign(n + 1, 0);
  t.phi.assign(n + 1, 0);
  t.spf.assign(n + 1, 0);

  t.mu[1] = 1;
  t.phi[1] = 1;
  t.spf[1] = 1;

  // Linear sieve: each composite is struck exactly once, by its smallest
  // prime factor, which is what makes the mu/phi recurrences valid.
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (t.spf[i] == 0) {
      t.spf[i] = static_cast<std::uint32_t>(i);
      t.mu[i] = -1;
      t.phi[i] = i - 1;
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > t.spf[i] || i * p > n) break;
      const std::uint64_t ip = i * p;
      t.spf[ip] = p;
      if (p == t.spf[i]) {
        t.mu[ip] = 0;
        t.phi[ip] = t.phi[i] * p;
        break;
      }
      t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
      t.phi[ip] = t.phi[i] * (p - 1);
    }
  }

  // sigma0/sigma1 by divisor enumeration: every d stamps its multiples.
  for (std::uint64_t d = 1; d <= n; ++d) {
    for (std::uint64_t m = d; m <= n; m += d) {
      t.sigma0[m] += 1;
      t.sigma1[m] += d;
    }
  }
  return t;
}

std::int64_t mertens(std::uint64_t n, const DivisorTables& tables) {
  if (!tables.covers(n)) {
    throw std::invalid_argument("mertens: tables do not cover n = " + std::to_string(n));
  }
  std::int64_t sum = 0;
  for (std::uint64_t k = 1; k <= n; ++k) sum += tables.mu[k];
  return sum;
}

std::uint64_t pillai(std::uint64_t d, const DivisorTables& tables) {
  if (!tables.covers(d)) {
    throw std::invalid_argument("pillai: tables do not cover d = " + std::to_string(d));
  }
  // Enumerate divisors from the spf factorization, then apply
  // P(d) = sum_{e|d} e * phi(d/e).
  std::array<std::uint64_t, 16> prime_pow{};  // p^k for each distinct prime
  std::size_t num_primes = 0;
  std::uint64_t rest = d;
  while (rest > 1) {
    const std::uint64_t p = tables.spf[rest];
    std::uint64_t pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
    }
    prime_pow[num_primes++] = pk;  // 2*3*5*...*53 > 2^64: 16 slots suffice
  }

  std::vector<std::uint64_t> divisors{1};
  for (std::size_t i = 0; i < num_primes; ++i) {
    const std::size_t base = divisors.size();
    const std::uint64_t p = tables.spf[prime_pow[i]];
    for (std::size_t j = 0; j < base; ++j) {
      std::uint64_t q = p;
      while (true) {
        divisors.push_back(divisors[j] * q);
        if (q == prime_pow[i]) break;
        q *= p;
      }
    }
  }

  std::uint64_t sum = 0;
  for (std::uint64_t e : divisors) sum += e * tables.phi[d / e];
  return sum;
}

std::vector<std::uint64_t> record_indices(std::span<const double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("record_indices: need a nonempty 1-based sequence");
  }
  std::vector<std::uint64_t> records;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > best) {
      best = values[i];
      records.push_back(i);
    }
  }
  return records;
}

namespace {

constexpr char kMagic[4] = {'R', 'D', 'H', 'F'};

static_assert(std::endian::native == std::endian::little,
              "cache format is little-endian; this code writes raw arrays");

template <class T>
void write_raw(std::ofstream& out, const T* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(T)));
}

template <class T>
void read_raw(std::ifstream& in, T* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in) throw std::runtime_error("load_tables: truncated file");
}

}  // namespace

void save_tables(const DivisorTables& tables, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_tables: cannot open " + path.string());
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t version = kTablesFormatVersion;
  write_raw(out, &version, 1);
  write_raw(out, &tables.n, 1);
  const std::size_t len = tables.n + 1;
  write_raw(out, tables.mu.data(), len);
  write_raw(out, tables.sigma0.data(), len);
  write_raw(out, tables.sigma1.data(), len);
  write_raw(out, tables.phi.data(), len);
  write_raw(out, tables.spf.data(), len);
  if (!out) throw std::runtime_error("save_tables: write failed for " + path.string());
}

DivisorTables load_tables(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_tables: cannot open " + path.string());

  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("load_tables: bad magic in " + path.string());
  }
  std::uint32_t version = 0;
  read_raw(in, &version, 1);
  if (version != kTablesFormatVersion) {
    throw std::runtime_error("load_tables: format version " + std::to_string(version) +
                             " (want " + std::to_string(kTablesFormatVersion) + ")");
  }

  DivisorTables t;
  read_raw(in, &t.n, 1);
  if (t.n == 0) throw std::runtime_error("load_tables: corrupt header (n = 0)");
  const std::size_t len = t.n + 1;
  t.mu.resize(len);
  t.sigma0.resize(len);
  t.sigma1.resize(len);
  t.phi.resize(len);
  t.spf.resize(len);
  read_raw(in, t.mu.data(), len);
  read_raw(in, t.sigma0.data(), len);
  read_raw(in, t.sigma1.data(), len);
  read_raw(in, t.phi.data(), len);
  read_raw(in, t.spf.data(), len);

  // Reject trailing garbage: a concatenated or doubled file is not a cache.
  in.peek();
  if (!in.eof()) throw std::runtime_error("load_tables: trailing bytes in " + path.string());
  return t;
}

}  // namespace redheffer
