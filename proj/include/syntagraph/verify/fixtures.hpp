// Copyright 2026 The Syntagraph Authors
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

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace syntagraph::verify {

// "The earliest book printed with movable types" in Universal Dependencies
// form: book is the root, printed modifies book, types attaches to printed.
inline constexpr std::string_view kPrintedTypesConllu =
    "# text = The earliest book printed with movable types\n"
    "1\tThe\tthe\tDET\tDT\t_\t3\tdet\t_\t_\n"
    "2\tearliest\tearly\tADJ\tJJS\t_\t3\tamod\t_\t_\n"
    "3\tbook\tbook\tNOUN\tNN\t_\t0\troot\t_\t_\n"
    "4\tprinted\tprint\tVERB\tVBN\t_\t3\tacl\t_\t_\n"
    "5\twith\twith\tADP\tIN\t_\t7\tcase\t_\t_\n"
    "6\tmovable\tmovable\tADJ\tJJ\t_\t7\tamod\t_\t_\n"
    "7\ttypes\ttype\tNOUN\tNNS\t_\t4\tobl\t_\t_\n"
    "\n";

// ARPAbet phonemes per word: DH AH | ER L IY AH S T | B UH K | ...
inline const std::vector<std::size_t> kPrintedTypesPhonemesPerWord = {2, 6, 3, 7, 3, 7, 4};

}  // namespace syntagraph::verify
