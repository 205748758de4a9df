#include "redheffer/operators.hpp"

#include <numeric>
#include <thread>

namespace redheffer {

RedhefferOperator::RedhefferOperator(std::size_t n, const DivisorTables& tables)
    : n_(n), tables_(&tables) {
  if (n == 0) throw std::invalid_argument("RedhefferOperator: n must be >= 1");
  if (!tables.covers(n)) {
    throw std::invalid_argument("RedhefferOperator: tables do not cover n = " +
                                std::to_string(n));
  }
}

int RedhefferOperator::entry(std::size_t i, std::size_t j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) {
    throw std::invalid_argument("RedhefferOperator::entry: index out of range");
  }
  return (j == 1 || j % i == 0) ? 1 : 0;
}

std::uint64_t gram_entry(std::size_t i, std::size_t j, std::size_t n,
                         const DivisorTables& tables) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw std::invalid_argument("gram_entry: index out of range");
  }
  if (!tables.covers(n)) {
    throw std::invalid_argument("gram_entry: tables do not cover n");
  }
  if (i == 1 && j == 1) return n;
  if (i == 1) return tables.sigma0[j];
  if (j == 1) return tables.sigma0[i];
  return tables.sigma0[std::gcd(i, j)];
}

namespace detail {

void parallel_rows(std::size_t first, std::size_t last, unsigned threads,
                   const std::function<void(std::size_t)>& row_fn) {
  if (threads == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    threads = hc == 0 ? 1 : hc;
  }
  if (threads <= 1 || last - first <= 1) {
    for (std::size_t i = first; i < last; ++i) row_fn(i);
    return;
  }
  // Strided assignment: worker w takes rows w, w+T, w+2T, ... Row costs in
  // this codebase shrink with the index, so striding balances better than
  // contiguous chunks. Each row writes only its own output slot.
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = first + w; i < last; i += threads) row_fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace detail

}  // namespace redheffer
