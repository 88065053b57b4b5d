// Copyright 2026 The clonebound Authors
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

#ifndef CLONEBOUND_CLONEBOUND_HPP
#define CLONEBOUND_CLONEBOUND_HPP

#include "clonebound/clone.hpp"
#include "clonebound/errors.hpp"
#include "clonebound/io.hpp"
#include "clonebound/matkernel.hpp"
#include "clonebound/measure.hpp"
#include "clonebound/random.hpp"
#include "clonebound/search.hpp"
#include "clonebound/states.hpp"

#endif  // CLONEBOUND_CLONEBOUND_HPP
