#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>

#include "knotfloer/cache.hpp"
#include "knotfloer/seifert.hpp"
#include "knotfloer/verify.hpp"

using namespace knotfloer;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("kf_cache_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("put then get returns the identical record") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  cache.put_value("signature", "T(2,3);alpha=1/4", -2);
  auto rec = cache.get("signature", "T(2,3);alpha=1/4");
  REQUIRE(rec.has_value());
  CHECK(rec->value.get<long>() == -2);
  CHECK(rec->kind == "signature");
  CHECK(rec->params == "T(2,3);alpha=1/4");
}

TEST_CASE("get of an unknown key is a clean miss") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  CHECK_FALSE(cache.get("signature", "T(99,100);alpha=1/7").has_value());
}

TEST_CASE("version bump invalidates old records") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  InvariantRecord rec{"count", "T(2,3);alpha=1/4", 1, "0.0.0-old", ""};
  cache.put(rec);
  // the stored version disagrees with the running version: miss
  CHECK_FALSE(cache.get("count", "T(2,3);alpha=1/4").has_value());
}

TEST_CASE("corrupt records are ignored and recomputed") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  cache.put_value("signature", "T(2,5);alpha=1/4", -4);
  // clobber every stored file with junk
  for (auto& e : std::filesystem::directory_iterator(tmp.path)) {
    std::ofstream out(e.path());
    out << "{not json";
  }
  CHECK_FALSE(cache.get("signature", "T(2,5);alpha=1/4").has_value());
}

TEST_CASE("cached and fresh values agree bit-for-bit") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  InvariantMemo memo(&cache);
  long first = memo.signature(2, 5, make_q(1, 5));
  InvariantMemo memo2(&cache);  // fresh memo, hits the disk record
  long second = memo2.signature(2, 5, make_q(1, 5));
  CHECK(first == second);
  CHECK(first == tl_signature(torus_knot_seifert(2, 5), make_q(1, 5)));
  long c1 = memo.count(2, 5, make_q(1, 5));
  InvariantMemo memo3(&cache);
  CHECK(memo3.count(2, 5, make_q(1, 5)) == c1);
}
