// Copyright 2026 The proxauth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sodium.h>

#include <mutex>
#include <string>
#include <string_view>

#include "proxauth/error.hpp"

namespace proxauth::auth {

inline void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
  });
}

// Argon2id work factors. `min` exists for tests and demos only.
struct HashCost {
  unsigned long long opslimit = crypto_pwhash_OPSLIMIT_INTERACTIVE;
  std::size_t memlimit = crypto_pwhash_MEMLIMIT_INTERACTIVE;

  static HashCost interactive() { return {}; }
  static HashCost moderate() { return {crypto_pwhash_OPSLIMIT_MODERATE, crypto_pwhash_MEMLIMIT_MODERATE}; }
  static HashCost min() { return {crypto_pwhash_OPSLIMIT_MIN, crypto_pwhash_MEMLIMIT_MIN}; }

  static HashCost parse(std::string_view name) {
    if (name == "interactive") return interactive();
    if (name == "moderate") return moderate();
    if (name == "min") return min();
    fail(ErrorCode::kConfig, "unknown hash_cost: " + std::string(name));
  }
};

// Encoded Argon2id verifier; embeds its own random salt and parameters.
inline std::string hash_secret(std::string_view secret, const HashCost& cost) {
  ensure_sodium();
  char out[crypto_pwhash_STRBYTES];
  if (crypto_pwhash_str(out, secret.data(), secret.size(), cost.opslimit, cost.memlimit) != 0) {
    throw std::runtime_error("password hashing ran out of memory");
  }
  return std::string(out);
}

inline bool verify_secret(std::string_view verifier, std::string_view secret) {
  ensure_sodium();
  const std::string v(verifier);
  return crypto_pwhash_str_verify(v.c_str(), secret.data(), secret.size()) == 0;
}

inline bool constant_time_equal(std::string_view a, std::string_view b) {
  ensure_sodium();
  if (a.size() != b.size()) return false;
  return sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

// Hex string of `bytes` random bytes from the OS CSPRNG.
inline std::string random_token(std::size_t bytes = 32) {
  ensure_sodium();
  std::string raw(bytes, '\0');
  randombytes_buf(raw.data(), raw.size());
  std::string hex(bytes * 2 + 1, '\0');
  sodium_bin2hex(hex.data(), hex.size(), reinterpret_cast<const unsigned char*>(raw.data()), raw.size());
  hex.pop_back();
  return hex;
}

inline std::string random_digits(int n) {
  ensure_sodium();
  std::string out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out += static_cast<char>('0' + randombytes_uniform(10));
  return out;
}

}  // namespace proxauth::auth
