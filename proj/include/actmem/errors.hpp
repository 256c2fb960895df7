/* Copyright 2026 The actmem Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ACTMEM_ERRORS_HPP_
#define ACTMEM_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace actmem {

// Base of every error raised by the library. Callers that only need a
// diagnostic can catch this and print what().
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLayerError : public Error {
 public:
  using Error::Error;
};

class PackingMismatchError : public Error {
 public:
  using Error::Error;
};

class ChainMismatchError : public Error {
 public:
  ChainMismatchError(std::size_t first_layer, const std::string& what)
      : Error(what), first_layer_(first_layer) {}
  // Zero-based index of the producing layer of the offending pair.
  std::size_t first_layer() const { return first_layer_; }

 private:
  std::size_t first_layer_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string field, const std::string& what)
      : Error(what), line_(line), column_(column), field_(std::move(field)) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  int column_;
  std::string field_;
};

// The configuration is too large for exhaustive enumeration.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Raised by the checked in-arena executor on the first write that destroys
// data still needed by the running layer.
class ClobberError : public Error {
 public:
  ClobberError(std::size_t layer, std::int64_t block, std::int64_t address,
               const std::string& what)
      : Error(what), layer_(layer), block_(block), address_(address) {}
  std::size_t layer() const { return layer_; }
  std::int64_t block() const { return block_; }
  std::int64_t address() const { return address_; }

 private:
  std::size_t layer_;
  std::int64_t block_;
  std::int64_t address_;
};

}  // namespace actmem

#endif  // ACTMEM_ERRORS_HPP_
