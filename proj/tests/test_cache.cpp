#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "redheffer/number_theory.hpp"

using namespace redheffer;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::mt19937_64 rng(std::random_device{}());
    path = fs::temp_directory_path() / ("redheffer_test_" + std::to_string(rng()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("tables round-trip through the cache file") {
  TempDir dir;
  const fs::path file = dir.path / "tables.bin";
  DivisorTables original = sieve_tables(777);
  save_tables(original, file);
  DivisorTables loaded = load_tables(file);

  CHECK(loaded.n == original.n);
  CHECK(loaded.mu == original.mu);
  CHECK(loaded.sigma0 == original.sigma0);
  CHECK(loaded.sigma1 == original.sigma1);
  CHECK(loaded.phi == original.phi);
  CHECK(loaded.spf == original.spf);
}

TEST_CASE("load rejects bad magic") {
  TempDir dir;
  const fs::path file = dir.path / "bad_magic.bin";
  {
    std::ofstream out(file, std::ios::binary);
    out << "NOPE this is not a table cache";
  }
  CHECK_THROWS_AS(load_tables(file), std::runtime_error);
}

TEST_CASE("load rejects a stale format version") {
  TempDir dir;
  const fs::path file = dir.path / "stale.bin";
  save_tables(sieve_tables(50), file);
  {
    // Corrupt the version field (bytes 4..7, after the 4-byte magic).
    std::fstream f(file, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(4);
    const std::uint32_t wrong = kTablesFormatVersion + 7;
    f.write(reinterpret_cast<const char*>(&wrong), sizeof(wrong));
  }
  CHECK_THROWS_AS(load_tables(file), std::runtime_error);
}

TEST_CASE("load rejects truncated and padded files") {
  TempDir dir;
  const fs::path file = dir.path / "tables.bin";
  save_tables(sieve_tables(123), file);

  const auto full_size = fs::file_size(file);
  fs::resize_file(file, full_size - 9);
  CHECK_THROWS_AS(load_tables(file), std::runtime_error);

  save_tables(sieve_tables(123), file);
  {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    out << "junk";
  }
  CHECK_THROWS_AS(load_tables(file), std::runtime_error);
}

TEST_CASE("load rejects a missing file") {
  TempDir dir;
  CHECK_THROWS_AS(load_tables(dir.path / "absent.bin"), std::runtime_error);
}
