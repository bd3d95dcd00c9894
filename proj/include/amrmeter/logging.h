#ifndef AMRMETER_LOGGING_H_
#define AMRMETER_LOGGING_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace amrmeter {

// Warnings go to stderr unless a sink is installed. The sink is process-wide
// and calls into it are serialized.
using WarningSink = std::function<void(std::string_view)>;

void Warn(std::string_view message);

// Installs `sink` and returns the previous one. Passing an empty function
// restores the stderr default.
WarningSink SetWarningSink(WarningSink sink);

// RAII capture of warnings, used by tests and by the CLI to collect notes
// into reports.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool Contains(std::string_view fragment) const;

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace amrmeter

#endif  // AMRMETER_LOGGING_H_
