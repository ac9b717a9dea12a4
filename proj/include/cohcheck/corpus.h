#pragma once

#include <string_view>
#include <vector>

namespace cohcheck {

struct CorpusFile {
    std::string_view name;
    std::string_view text;
};

/// The shipped .coh files, in an order where every file only uses names
/// from the files before it.
const std::vector<CorpusFile>& embedded_corpus();

}  // namespace cohcheck
