#pragma once

// Minimal test harness: REQUIRE aborts the binary, EXPECT records the
// failure and lets the run continue; main returns nonzero on any failure.

#include <cstdio>
#include <cstdlib>

inline int g_failures = 0;

#define REQUIRE(cond, msg)                                       \
  do {                                                           \
    if (!(cond)) {                                               \
      std::printf("[FAIL] %s:%d %s\n", __FILE__, __LINE__, msg); \
      std::exit(1);                                              \
    }                                                            \
  } while (0)

#define EXPECT(cond, msg)                                        \
  do {                                                           \
    if (!(cond)) {                                               \
      std::printf("[FAIL] %s:%d %s\n", __FILE__, __LINE__, msg); \
      g_failures++;                                              \
    }                                                            \
  } while (0)

#define PASS(msg) std::printf("[PASS] %s\n", msg)

#define REQUIRE_THROWS(expr, ExcType, msg)                       \
  do {                                                           \
    bool caught_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const ExcType&) {                                   \
      caught_ = true;                                            \
    } catch (...) {                                              \
    }                                                            \
    REQUIRE(caught_, msg);                                       \
  } while (0)
