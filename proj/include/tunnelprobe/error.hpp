/* Copyright 2026 The tunnelprobe Authors. All Rights Reserved.

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

#ifndef TUNNELPROBE_ERROR_HPP_
#define TUNNELPROBE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tunnelprobe {

// Input violates a documented precondition or invariant. CLI exit status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed, truncated or unreadable file. CLI exit status 2.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tunnelprobe

#endif  // TUNNELPROBE_ERROR_HPP_
