#pragma once

#include <gtest/gtest.h>

#include "fqinc/error.hpp"

// Runs `stmt` and checks it throws fqinc::Error with the given code.
#define EXPECT_FQ_ERROR(stmt, expected_code)                                     \
  do {                                                                           \
    try {                                                                        \
      (void)(stmt);                                                              \
      ADD_FAILURE() << "expected " << fqinc::to_string(expected_code);           \
    } catch (const fqinc::Error& fq_err_) {                                      \
      EXPECT_EQ(fq_err_.code(), expected_code) << fq_err_.what();                \
    }                                                                            \
  } while (0)
