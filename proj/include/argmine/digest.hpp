#pragma once

#include <string>

namespace argmine {

// Hex-encoded SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

// Stable 64-bit hash for tokenizer buckets and seed derivation (FNV-1a).
std::uint64_t fnv1a64(const std::string& bytes);

// Derives a subsystem seed from the single run seed (D-style one-knob
// seeding): splitmix64 over seed xor a label hash.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& label);

}  // namespace argmine
