package corpus.text;

import java.util.ArrayList;
import java.util.List;

public final class StringTools {

    private StringTools() {
    }

    /** Reverses the characters of a string. */
    public static String reverse(String input) {
        if (input == null) {
            return null;
        }
        StringBuilder sb = new StringBuilder(input.length());
        for (int i = input.length() - 1; i >= 0; i--) {
            sb.append(input.charAt(i));
        }
        return sb.toString();
    }

    public static boolean isPalindrome(String s) {
        int left = 0;
        int right = s.length() - 1;
        while (left < right) {
            if (s.charAt(left) != s.charAt(right)) {
                return false;
            }
            left++;
            right--;
        }
        return true;
    }

    public static int countVowels(String text) {
        int count = 0;
        String vowels = "aeiouAEIOU";
        for (char c : text.toCharArray()) {
            if (vowels.indexOf(c) >= 0) {
                count += 1;
            }
        }
        return count;
    }

    // Splits on a single delimiter without regular expressions.
    public static List<String> split(String line, char delimiter) {
        List<String> parts = new ArrayList<>();
        int start = 0;
        for (int i = 0; i < line.length(); i++) {
            if (line.charAt(i) == delimiter) {
                parts.add(line.substring(start, i));
                start = i + 1;
            }
        }
        parts.add(line.substring(start));
        return parts;
    }

    public static String capitalize(String word) {
        if (word == null || word.isEmpty()) {
            return word;
        }
        char first = Character.toUpperCase(word.charAt(0));
        return first + word.substring(1).toLowerCase();
    }

    public static String repeat(String unit, int times) {
        if (times < 0) {
            throw new IllegalArgumentException("times must be non-negative: " + times);
        }
        StringBuilder out = new StringBuilder();
        for (int i = 0; i < times; i++) {
            out.append(unit);
        }
        return out.toString();
    }

    public static String padLeft(String value, int width, char fill) {
        StringBuilder sb = new StringBuilder();
        int missing = width - value.length();
        while (missing > 0) {
            sb.append(fill);
            missing--;
        }
        sb.append(value);
        return sb.toString();
    }

    public static int longestRun(String s) {
        if (s.isEmpty()) return 0;
        int best = 1, current = 1;
        for (int i = 1; i < s.length(); i++) {
            if (s.charAt(i) == s.charAt(i - 1)) {
                current++;
                best = Math.max(best, current);
            } else {
                current = 1;
            }
        }
        return best;
    }
}
