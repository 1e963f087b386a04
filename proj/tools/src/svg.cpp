#include "slowfast_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <sstream>

#include "slowfast_cli/csv.hpp"

namespace slowfast::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string px(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

}  // namespace

std::string chirp_svg(const SlowFastModel& model, const std::vector<Segment>& segments,
                      const std::string& title) {
    double xmin = model.contact_x(), xmax = model.contact_x(), ymax = 0.0;
    for (const Segment& s : segments) {
        xmin = std::min(xmin, s.x0);
        xmax = std::max(xmax, s.x1);
        ymax = std::max(ymax, s.y);
    }
    if (xmax - xmin <= 0.0) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax <= 0.0) ymax = 1.0;
    const double padx = 0.05 * (xmax - xmin);
    xmin -= padx;
    xmax += padx;
    ymax *= 1.1;
    const double ymin = -0.05 * ymax;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto X = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    const auto Y = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
          "viewBox=\"0 0 800 600\">\n";
    os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">"
       << escape(title) << "</text>\n";

    // axes and ticks
    os << "<g stroke=\"#444\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(kLeft + pw)
       << "\" y2=\"" << px(kTop + ph) << "\"/>\n";
    os << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft)
       << "\" y2=\"" << px(kTop + ph) << "\"/>\n";
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        os << "<line x1=\"" << px(X(xv)) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(X(xv))
           << "\" y2=\"" << px(kTop + ph + 5) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << px(X(xv)) << "\" y=\"" << px(kTop + ph + 18)
           << "\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
        os << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(Y(yv)) << "\" x2=\"" << px(kLeft)
           << "\" y2=\"" << px(Y(yv)) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(Y(yv) + 4)
           << "\" text-anchor=\"end\">" << format_number(yv) << "</text>\n";
    }
    os << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 15)
       << "\" text-anchor=\"middle\">x</text>\n";
    os << "<text x=\"18\" y=\"" << px(kTop + ph / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << px(kTop + ph / 2)
       << ")\">section height</text>\n</g>\n";

    // critical curve, clipped to the plot window
    os << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    constexpr int kSamples = 400;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = xmin + (xmax - xmin) * i / kSamples;
        const double y = std::clamp(model.critical_height(x), ymin, ymax);
        os << px(X(x)) << ',' << px(Y(y)) << ' ';
    }
    os << "\"/>\n";

    os << "<g stroke=\"black\" stroke-width=\"0.6\">\n";
    for (const Segment& s : segments) {
        os << "<line x1=\"" << px(X(s.x0)) << "\" y1=\"" << px(Y(s.y)) << "\" x2=\"" << px(X(s.x1))
           << "\" y2=\"" << px(Y(s.y)) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace slowfast::cli
