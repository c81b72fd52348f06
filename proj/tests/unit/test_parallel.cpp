// Copyright 2026 The qbat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qbat/errors.hpp"
#include "qbat/parallel.hpp"

namespace {

// Sets QBAT_THREADS for one scope.
class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* value) {
    if (const char* old = std::getenv("QBAT_THREADS")) saved_ = old;
    ::setenv("QBAT_THREADS", value, 1);
  }
  ~ThreadsEnv() {
    if (saved_.empty()) {
      ::unsetenv("QBAT_THREADS");
    } else {
      ::setenv("QBAT_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(ParallelMap, PreservesOrder) {
  for (const char* threads : {"1", "4"}) {
    ThreadsEnv env(threads);
    const auto out = qbat::parallel_map(1000, [](std::size_t i) { return static_cast<int>(i * i); });
    ASSERT_EQ(out.size(), 1000u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
}

TEST(ParallelMap, EmptyRange) {
  EXPECT_TRUE(qbat::parallel_map(0, [](std::size_t) { return 1; }).empty());
}

TEST(ParallelMap, PropagatesExceptions) {
  ThreadsEnv env("3");
  EXPECT_THROW(qbat::parallel_map(100,
                                  [](std::size_t i) {
                                    if (i == 42) throw std::runtime_error("boom");
                                    return i;
                                  }),
               std::runtime_error);
}

TEST(ThreadCount, ReadsEnvironment) {
  {
    ThreadsEnv env("7");
    EXPECT_EQ(qbat::thread_count(), 7);
  }
  for (const char* bad : {"0", "-2", "abc", "3x", ""}) {
    ThreadsEnv env(bad);
    EXPECT_THROW(qbat::thread_count(), qbat::ValidationError) << "'" << bad << "'";
  }
}
