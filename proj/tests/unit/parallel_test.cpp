#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cascademd/parallel.h"

using namespace cascademd;

TEST_CASE("every task index runs exactly once") {
  WorkerPool pool(4);
  CHECK(pool.workers() == 4);

  std::vector<std::atomic<int>> hits(100);
  pool.run([&](int i) { hits[static_cast<std::size_t>(i)].fetch_add(1); }, 100);
  for (const auto& h : hits) CHECK(h.load() == 1);

  // reuse across many batches, including sizes around the worker count
  for (int n : {0, 1, 3, 4, 5, 64}) {
    std::atomic<int> count{0};
    std::atomic<long> sum{0};
    pool.run(
        [&](int i) {
          count.fetch_add(1);
          sum.fetch_add(i);
        },
        n);
    CHECK(count.load() == n);
    CHECK(sum.load() == static_cast<long>(n) * (n - 1) / 2);
  }
}

TEST_CASE("zero or negative batch sizes are no-ops") {
  WorkerPool pool(2);
  std::atomic<int> count{0};
  pool.run([&](int) { count.fetch_add(1); }, 0);
  pool.run([&](int) { count.fetch_add(1); }, -3);
  CHECK(count.load() == 0);
}

TEST_CASE("a single worker runs inline and in ascending order") {
  WorkerPool pool(1);
  const std::thread::id caller = std::this_thread::get_id();
  std::vector<int> order;
  std::vector<std::thread::id> where;
  pool.run(
      [&](int i) {
        order.push_back(i);
        where.push_back(std::this_thread::get_id());
      },
      16);
  REQUIRE(order.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(order[static_cast<std::size_t>(i)] == i);
    CHECK(where[static_cast<std::size_t>(i)] == caller);
  }
}

TEST_CASE("more workers than tasks still completes") {
  WorkerPool pool(8);
  std::atomic<int> count{0};
  pool.run([&](int) { count.fetch_add(1); }, 3);
  CHECK(count.load() == 3);
}

TEST_CASE("worker count is validated") {
  CHECK_THROWS_WITH_AS(WorkerPool(0), doctest::Contains("at least one worker"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(WorkerPool(-2), doctest::Contains("at least one worker"),
                       std::invalid_argument);
}
