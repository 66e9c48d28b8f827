#ifndef CHUNKGA_ARPA_H_
#define CHUNKGA_ARPA_H_

#include <filesystem>
#include <iosfwd>

#include "chunkga/ngram.h"

namespace chunkga {

// Standard ARPA text: \data\ header, one \k-grams: section per order with
// `logprob<TAB>w1 .. wk[<TAB>backoff]` lines, \end\. Entries are sorted by
// their words so the output is a pure function of the model. The <unk> line
// carries the out-of-vocabulary estimate.
void write_arpa(std::ostream& out, const NGramModel& model);

// Throws MalformedArpa with the offending line number.
NGramModel read_arpa(std::istream& in);

void write_arpa_file(const std::filesystem::path& path, const NGramModel& model);
NGramModel read_arpa_file(const std::filesystem::path& path);

}  // namespace chunkga

#endif  // CHUNKGA_ARPA_H_
