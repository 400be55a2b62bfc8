package corpus.units;

import java.util.List;

public class Temperature {
    public static final double ABSOLUTE_ZERO_C = -273.15;

    public static double celsiusToFahrenheit(double c) {
        if (c < ABSOLUTE_ZERO_C) {
            throw new IllegalArgumentException("below absolute zero: " + c);
        }
        double f = c * 9.0 / 5.0 + 32.0;
        return f;
    }

    public static double fahrenheitToCelsius(double f) {
        double c = (f - 32.0) * 5.0 / 9.0;
        if (c < ABSOLUTE_ZERO_C) {
            throw new IllegalArgumentException("below absolute zero: " + f);
        }
        return c;
    }

    public static double average(List<Double> readings) {
        if (readings.isEmpty()) {
            return Double.NaN;
        }
        double sum = 0;
        for (double r : readings) {
            sum += r;
        }
        return sum / readings.size();
    }

    public static double[] minMax(double[] samples) {
        double min = Double.POSITIVE_INFINITY;
        double max = Double.NEGATIVE_INFINITY;
        for (double s : samples) {
            if (s < min) min = s;
            if (s > max) max = s;
        }
        return new double[] {min, max};
    }

    public static String classify(double celsius) {
        if (celsius < 0) {
            return "freezing";
        } else if (celsius < 10) {
            return "cold";
        } else if (celsius < 20) {
            return "mild";
        } else if (celsius < 30) {
            return "warm";
        }
        return "hot";
    }

    public static double movingAverage(double[] values, int window, int end) {
        int start = Math.max(0, end - window + 1);
        double total = 0.0;
        for (int i = start; i <= end; i++) {
            total += values[i];
        }
        return total / (end - start + 1);
    }

    public static int daysAbove(double[] daily, double threshold) {
        int days = 0;
        for (int i = 0; i < daily.length; i++) {
            if (daily[i] > threshold) {
                days++;
            }
        }
        return days;
    }

    public static double heatIndex(double tempF, double humidity) {
        double t = tempF;
        double r = humidity;
        double hi = -42.379 + 2.04901523 * t + 10.14333127 * r - 0.22475541 * t * r;
        hi = hi - 0.00683783 * t * t - 0.05481717 * r * r;
        hi = hi + 0.00122874 * t * t * r + 0.00085282 * t * r * r;
        return hi - 0.00000199 * t * t * r * r;
    }
}
