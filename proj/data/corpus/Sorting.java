package corpus.algo;

import java.util.Arrays;

public class Sorting {

    public static void bubbleSort(int[] a) {
        boolean swapped = true;
        for (int pass = 0; pass < a.length - 1 && swapped; pass++) {
            swapped = false;
            for (int i = 0; i < a.length - 1 - pass; i++) {
                if (a[i] > a[i + 1]) {
                    int tmp = a[i];
                    a[i] = a[i + 1];
                    a[i + 1] = tmp;
                    swapped = true;
                }
            }
        }
    }

    public static void insertionSort(int[] values) {
        for (int i = 1; i < values.length; i++) {
            int key = values[i];
            int j = i - 1;
            while (j >= 0 && values[j] > key) {
                values[j + 1] = values[j];
                j--;
            }
            values[j + 1] = key;
        }
    }

    public static int[] mergeSort(int[] input) {
        if (input.length <= 1) {
            return input;
        }
        int mid = input.length / 2;
        int[] left = mergeSort(Arrays.copyOfRange(input, 0, mid));
        int[] right = mergeSort(Arrays.copyOfRange(input, mid, input.length));
        int[] merged = new int[input.length];
        int i = 0, j = 0, k = 0;
        while (i < left.length && j < right.length) {
            merged[k++] = left[i] <= right[j] ? left[i++] : right[j++];
        }
        while (i < left.length) merged[k++] = left[i++];
        while (j < right.length) merged[k++] = right[j++];
        return merged;
    }

    private static int partition(int[] arr, int lo, int hi) {
        int pivot = arr[hi];
        int store = lo;
        for (int i = lo; i < hi; i++) {
            if (arr[i] < pivot) {
                int t = arr[i];
                arr[i] = arr[store];
                arr[store] = t;
                store++;
            }
        }
        int t = arr[store];
        arr[store] = arr[hi];
        arr[hi] = t;
        return store;
    }

    public static void quickSort(int[] arr, int lo, int hi) {
        if (lo >= hi) {
            return;
        }
        int p = partition(arr, lo, hi);
        quickSort(arr, lo, p - 1);
        quickSort(arr, p + 1, hi);
    }

    public static int binarySearch(int[] sorted, int target) {
        int lo = 0;
        int hi = sorted.length - 1;
        while (lo <= hi) {
            int mid = (lo + hi) >>> 1;
            if (sorted[mid] == target) {
                return mid;
            } else if (sorted[mid] < target) {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        return -(lo + 1);
    }

    public static boolean isSorted(int[] data) {
        for (int i = 1; i < data.length; i++) {
            if (data[i - 1] > data[i]) {
                return false;
            }
        }
        return true;
    }

    public static void countingSort(int[] a, int maxValue) {
        int[] counts = new int[maxValue + 1];
        for (int v : a) {
            counts[v]++;
        }
        int idx = 0;
        for (int v = 0; v <= maxValue; v++) {
            while (counts[v]-- > 0) {
                a[idx++] = v;
            }
        }
    }
}
