#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "curlspec/parallel.hpp"

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  curlspec::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(curlspec::parallel_for(100, 3,
                                      [](std::size_t i) {
                                        if (i == 57) throw std::runtime_error("boom");
                                      }),
               std::runtime_error);
}

TEST(ParallelFor, EmptyRangeIsNoop) {
  int calls = 0;
  curlspec::parallel_for(0, 8, [&](std::size_t) { ++calls; });
  EXPECT_EQ(calls, 0);
}

TEST(ThreadCount, ZeroMeansOneAndEnvCaps) {
  ::unsetenv("CURLSPEC_THREADS");
  EXPECT_EQ(curlspec::resolve_thread_count(0), 1u);
  EXPECT_EQ(curlspec::resolve_thread_count(6), 6u);
  ::setenv("CURLSPEC_THREADS", "2", 1);
  EXPECT_EQ(curlspec::resolve_thread_count(6), 2u);
  EXPECT_EQ(curlspec::resolve_thread_count(1), 1u);
  ::setenv("CURLSPEC_THREADS", "junk", 1);
  EXPECT_EQ(curlspec::resolve_thread_count(6), 6u);
  ::unsetenv("CURLSPEC_THREADS");
}
